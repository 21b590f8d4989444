#include "doctest.h"

#include <random>
#include <set>

#include "p2flip/linalg.hpp"

using namespace p2flip;

namespace {

FpMatrix from_index(std::uint64_t index, int q, Eigen::Index rows, Eigen::Index cols) {
  FpMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m.data()[k] = static_cast<int>(index % q);
    index /= q;
  }
  return m;
}

std::uint64_t power(int q, Eigen::Index e) {
  std::uint64_t p = 1;
  for (Eigen::Index k = 0; k < e; ++k) p *= q;
  return p;
}

FpMatrix random_matrix(int q, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, q - 1);
  FpMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = d(rng);
  return m;
}

}  // namespace

TEST_CASE("rationals render canonically") {
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(parse_rational("-2/6") == make_rational(-1, 3));
  CHECK(parse_rational("5") == 5);
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("x"), ParameterError);
  CHECK_THROWS_AS(make_rational(1, 0), ParameterError);
}

TEST_CASE("prime fields") {
  CHECK(is_prime(2));
  CHECK(is_prime(251));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK_THROWS(PrimeField(4));
  const PrimeField f(7);
  for (int a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.reduce(-3) == 4);
}

TEST_CASE("kernel dimension matches the number of solutions") {
  std::mt19937_64 rng(1);
  for (int q : {2, 3}) {
    const PrimeField f(q);
    for (int t = 0; t < 40; ++t) {
      const Eigen::Index rows = 1 + rng() % 3, cols = 1 + rng() % 4;
      const FpMatrix m = random_matrix(q, rows, cols, rng);
      std::uint64_t solutions = 0;
      for (std::uint64_t x = 0; x < power(q, cols); ++x)
        if (f.mul(m, from_index(x, q, cols, 1)).isZero()) ++solutions;
      const FpMatrix k = kernel<PrimeField>(m, f);
      CHECK(solutions == power(q, k.cols()));
      CHECK(rank<PrimeField>(m, f) + k.cols() == cols);
      CHECK(f.mul(m, k).isZero());
    }
  }
}

TEST_CASE("GL order by enumeration") {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
    const PrimeField f(q);
    std::uint64_t invertible = 0;
    for (std::uint64_t x = 0; x < power(q, d * d); ++x)
      if (rank<PrimeField>(from_index(x, q, d, d), f) == d) ++invertible;
    CHECK(gl_order(q, d) == BigInt(invertible));
  }
  CHECK(gl_order(2, 0) == 1);
}

TEST_CASE("subspace enumeration") {
  // Distinct column spaces of all matrices equal the listed subspaces.
  for (auto [q, dim] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {2, 4}}) {
    const PrimeField f(q);
    const auto& all = subspaces(q, dim);
    std::set<std::vector<int>> seen;
    for (std::uint64_t x = 0; x < power(q, dim * dim); ++x) {
      const FpMatrix c = column_space(from_index(x, q, dim, dim), f);
      std::vector<int> key(c.data(), c.data() + c.size());
      key.push_back(static_cast<int>(c.cols()));
      seen.insert(key);
    }
    CHECK(all.size() == seen.size());
  }
  CHECK(subspaces_of_dim(2, 4, 2).size() == 35);
  CHECK(subspaces_of_dim(3, 4, 2).size() == 130);
  CHECK(subspaces_of_dim(2, 2, 3).empty());
}

TEST_CASE("annihilator, preimage and inverses") {
  std::mt19937_64 rng(2);
  const PrimeField f(3);
  for (int t = 0; t < 30; ++t) {
    const FpMatrix basis = column_space(random_matrix(3, 4, 2, rng), f);
    const FpMatrix ann = annihilator(basis, 4, f);
    CHECK(f.mul(ann, basis).isZero());
    CHECK(ann.rows() == 4 - basis.cols());
    CHECK(contains(basis, column_space(kernel<PrimeField>(ann, f), f), f));

    const FpMatrix map = random_matrix(3, 3, 4, rng);
    const FpMatrix target = column_space(random_matrix(3, 3, 1, rng), f);
    const FpMatrix pre = preimage(map, target, f);
    CHECK(contains(target, f.mul(map, pre), f));
    // Everything outside the preimage is mapped outside the target.
    std::uint64_t inside = 0;
    for (std::uint64_t x = 0; x < power(3, 4); ++x) {
      const FpMatrix v = from_index(x, 3, 4, 1);
      if (contains(target, f.mul(map, v), f)) ++inside;
    }
    CHECK(inside == power(3, pre.cols()));
  }
  const FpMatrix u = column_space(random_matrix(3, 4, 2, rng), f);
  CHECK(f.mul(left_inverse(u, f), u) == identity(u.cols()));
  FpMatrix p(2, 3);
  p << 1, 2, 0, 0, 1, 1;
  CHECK(f.mul(p, right_inverse(p, f)) == identity(2));
}

TEST_CASE("exact rational rank") {
  const RationalField f;
  RMatrix m(2, 3);
  m << make_rational(1, 2), 1, 0, 1, 2, 0;
  CHECK(rank<RationalField>(m, f) == 1);
  CHECK(kernel<RationalField>(m, f).cols() == 2);
  CHECK(is_exactly_zero(RMatrix::Constant(2, 2, Rational(0))));
  CHECK_FALSE(is_exactly_zero(m));
}
