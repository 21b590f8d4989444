#include "doctest.h"

#include <random>

#include "p2flip/kronecker.hpp"
#include "p2flip/oracle.hpp"
#include "p2flip/repcore.hpp"

using namespace p2flip;

namespace {

void fill(FpMatrix& m, std::uint64_t& index, int q) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    m.data()[k] = static_cast<int>(index % q);
    index /= q;
  }
}

// Counts triples (f_{-1}, f_0, f_1) commuting with every arrow.
std::uint64_t count_homs(const BRep& m, const BRep& n) {
  const PrimeField f(m.q);
  std::array<FpMatrix, 3> maps{FpMatrix(n.dim_minus1(), m.dim_minus1()), FpMatrix(n.dim_0(), m.dim_0()),
                               FpMatrix(n.dim_1(), m.dim_1())};
  Eigen::Index entries = 0;
  for (const auto& x : maps) entries += x.size();
  std::uint64_t total = 1, count = 0;
  for (Eigen::Index k = 0; k < entries; ++k) total *= m.q;
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (auto& x : maps) fill(x, rest, m.q);
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i)
      ok = f.mul(n.C[i], maps[0]) == f.mul(maps[1], m.C[i]) && f.mul(n.D[i], maps[1]) == f.mul(maps[2], m.D[i]);
    count += ok;
  }
  return count;
}

// Graded subspace triples closed under the arrows, from the full subspace lists.
std::size_t count_submodules(const BRep& e) {
  const PrimeField f(e.q);
  std::size_t count = 0;
  for (const auto& u0 : subspaces(e.q, e.dim_0()))
    for (const auto& um : subspaces(e.q, e.dim_minus1()))
      for (const auto& u1 : subspaces(e.q, e.dim_1())) {
        bool closed = true;
        for (int i = 0; i < 3 && closed; ++i)
          closed = contains(u0, f.mul(e.C[i], um), f) && contains(u1, f.mul(e.D[i], u0), f);
        const Eigen::Index d = um.cols() + u0.cols() + u1.cols();
        if (closed && d > 0 && d < e.dims.total()) ++count;
      }
  return count;
}

std::uint64_t power(int q, int e) {
  std::uint64_t p = 1;
  while (e-- > 0) p *= q;
  return p;
}

}  // namespace

TEST_CASE("classes and Chern characters") {
  CHECK(alpha(1, 2) == DimVector{2, 4, 1});
  CHECK(alpha(0, 1) == DimVector{1, 1, 0});
  CHECK(alpha(2, 4) == DimVector{4, 9, 3});
  CHECK(alpha(-1, 1) == DimVector{1, 0, 0});
  CHECK_THROWS_AS(alpha(-2, 1), ParameterError);
  CHECK_THROWS_AS(alpha(0, 0), ParameterError);
  CHECK(as_alpha({4, 9, 3}) == std::make_pair(2, 4));
  CHECK_FALSE(as_alpha({1, 3, 1}).has_value());
  for (auto [r, n] : std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {2, 4}})
    CHECK(chern_of_class(alpha(r, n)) == ChernVector{-r, -1, 2 * n - 1});
  CHECK(chern_of_class(kE_0) == ChernVector{-1, 0, 0});
  CHECK(chern_of_class({1, 2, 1}) == ChernVector{0, 0, 2});
}

TEST_CASE("Euler form") {
  CHECK(euler_form(kE_0, kE_0) == 1);
  CHECK(euler_form(kE_minus1, kE_1) == 6);
  CHECK(euler_form(kE_minus1, kE_0) == -3);
  CHECK(euler_form(kE_1, kE_minus1) == 0);
  for (int n = 1; n <= 5; ++n)
    for (int r = 0; r <= 3; ++r)
      for (int i = 0; i <= r; ++i) {
        CHECK(euler_form(alpha(r - i, n), kE_0) == -(n + 1 - r + i));
        CHECK(euler_form(kE_0, alpha(r - i, n)) == -(n - 2 - r + i));
      }
}

TEST_CASE("relations") {
  CHECK(check_relations(BRep::zero(2, {2, 3, 1})));
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    CHECK(check_relations(kron_to_minus(random_kronecker(3, n, rng))));
    CHECK(check_relations(kron_to_plus(random_kronecker(3, n, rng))));
  }
  BRep e = BRep::zero(2, {1, 1, 1});
  e.C[0](0, 0) = 1;
  e.D[0](0, 0) = 1;
  CHECK_FALSE(check_relations(e));
  e.D[0](0, 0) = 0;
  e.D[1](0, 0) = 1;
  CHECK_FALSE(check_relations(e));  // D_1 C_0 + D_0 C_1 != 0
  CHECK_THROWS_AS(validate_shapes(BRep{2, {1, 1, 0}, {FpMatrix(2, 1), FpMatrix(1, 1), FpMatrix(1, 1)}, {}}), ShapeError);
}

TEST_CASE("Hom into and out of S_0") {
  const BRep s0 = BRep::simple(2, 0);
  CHECK(hom_dims(s0) == HomDims{1, 1});
  BRep e = BRep::zero(2, {2, 3, 1});
  e.C[0](0, 0) = 1;
  CHECK(hom_dims(e).h_from_s0 == 3);
  CHECK(hom_dims(e).h_to_s0 == 2);
}

TEST_CASE("Hom/Ext complex on simples") {
  const BRep sm = BRep::simple(2, -1), s0 = BRep::simple(2, 0), s1 = BRep::simple(2, 1);
  CHECK(hom_ext_complex(sm, s1) == HomExt{0, 0, 6});
  CHECK(hom_ext_complex(s0, s0) == HomExt{1, 0, 0});
  CHECK(hom_ext_complex(sm, s0) == HomExt{0, 3, 0});
  CHECK(hom_ext_complex(s0, s1) == HomExt{0, 3, 0});
  CHECK(hom_ext_complex(s1, sm) == HomExt{0, 0, 0});
}

TEST_CASE("hom agrees with counting homomorphisms") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(0, 2);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const DimVector a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)};
    const int entries = static_cast<int>(a.a_minus1 * b.a_minus1 + a.a_0 * b.a_0 + a.a_1 * b.a_1);
    if (entries > 10) continue;
    const BRep m = random_representation(2, a, rng), n = random_representation(2, b, rng);
    const HomExt h = hom_ext_complex(m, n);
    CHECK(count_homs(m, n) == power(2, h.hom));
    CHECK(h.hom - h.ext1 + h.ext2 == euler_form(a, b));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("submodule enumeration") {
  CHECK(submodules(direct_sum(BRep::simple(2, 0), BRep::simple(2, 0))).size() == 3);
  CHECK(submodules(BRep::simple(3, 0)).empty());
  // S_{-1} + S_0 with C = 0: only the two coordinate pieces.
  const auto subs = submodules(direct_sum(BRep::simple(2, -1), BRep::simple(2, 0)));
  REQUIRE(subs.size() == 2);
  std::mt19937_64 rng(5);
  for (int q : {2, 3})
    for (int t = 0; t < 25; ++t) {
      std::uniform_int_distribution<int> d(0, q == 2 ? 2 : 1);
      const DimVector a{d(rng), d(rng) + 1, d(rng)};
      const BRep e = random_representation(q, a, rng);
      CHECK(submodules(e).size() == count_submodules(e));
      for (const auto& s : submodules(e)) {
        const BRep sub = restrict_to(e, s.basis);
        CHECK(sub.dims == s.dims);
        CHECK(check_relations(sub));
      }
    }
  EnumerationGuard tight;
  tight.max_total_dim = 3;
  CHECK_THROWS_AS(submodules(BRep::zero(2, {2, 2, 0}), tight), ResourceError);
}

TEST_CASE("frames cover every submodule") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const BRep e = random_representation(2, alpha(0, 2), rng);
    std::map<std::tuple<int, int, int>, int> by_frame;
    for (const auto& s : submodules(e))
      ++by_frame[{static_cast<int>(s.dims.a_minus1), static_cast<int>(s.dims.a_0), static_cast<int>(s.dims.a_1)}];
    std::set<std::tuple<int, int, int>> from_frames;
    for_each_submodule_frame(e, [&](const SubmoduleFrame& fr) {
      for (int d0 = fr.d0_lo; d0 <= fr.d0_hi; ++d0) {
        const int total = fr.d_minus1 + d0 + fr.d_1;
        if (total > 0 && total < e.dims.total()) from_frames.insert({fr.d_minus1, d0, fr.d_1});
      }
    });
    for (const auto& [dims, count] : by_frame) CHECK(from_frames.count(dims) == 1);
    CHECK(from_frames.size() == by_frame.size());
  }
}

TEST_CASE("direct sums, quotients and JSON") {
  std::mt19937_64 rng(7);
  const BRep a = random_representation(3, {1, 2, 1}, rng), b = random_representation(3, {1, 1, 0}, rng);
  const BRep s = direct_sum(a, b);
  CHECK(s.dims == DimVector{2, 3, 1});
  CHECK(check_relations(s));
  CHECK(brep_from_json(to_json(s)) == s);
  CHECK_THROWS(direct_sum(a, random_representation(2, {1, 1, 0}, rng)));

  const BRep e = direct_sum(random_representation(2, alpha(0, 2), rng), BRep::simple(2, 0));
  const PrimeField f(2);
  const FpMatrix k = kernel<PrimeField>(e.stacked_D(), f);
  REQUIRE(k.cols() >= 1);
  const BRep quotient = quotient_at_v0(e, k.leftCols(1));
  CHECK(quotient.dims == alpha(0, 2));
  CHECK(check_relations(quotient));
  FpMatrix not_killed = FpMatrix::Zero(e.dim_0(), 1);
  bool found = false;
  for (Eigen::Index r = 0; r < e.dim_0() && !found; ++r) {
    not_killed.setZero();
    not_killed(r, 0) = 1;
    found = !f.mul(e.stacked_D(), not_killed).isZero();
  }
  if (found) CHECK_THROWS(quotient_at_v0(e, not_killed));

  const auto j = to_json(s);
  auto broken = nlohmann::json::parse(j.dump());
  broken["C"][0] = "oops";
  CHECK_THROWS(brep_from_json(broken));
}
