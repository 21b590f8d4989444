#include "doctest.h"

#include <random>

#include "p2flip/coherent.hpp"
#include "p2flip/oracle.hpp"

using namespace p2flip;

namespace {

FpMatrix random_matrix(int q, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, q - 1);
  FpMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = d(rng);
  return m;
}

// A random minus-side system on base: V is drawn inside the common kernel of the D_j.
std::optional<ExtendedRep> random_minus(const BRep& base, std::mt19937_64& rng) {
  const PrimeField f(base.q);
  const FpMatrix k = kernel<PrimeField>(base.stacked_D(), f);
  if (k.cols() == 0) return std::nullopt;
  const Eigen::Index i = 1 + rng() % k.cols();
  return extend_minus(base, f.mul(k, random_matrix(base.q, k.cols(), i, rng)));
}

// A random plus-side system: W contains the image of C.
std::optional<ExtendedRep> random_plus(const BRep& base, std::mt19937_64& rng) {
  const PrimeField f(base.q);
  const FpMatrix image = column_space(base.stacked_C(), f);
  const Eigen::Index a0 = base.dims.a_0;
  if (image.cols() == a0) return std::nullopt;
  const Eigen::Index extra = rng() % (a0 - image.cols());
  return extend_plus(base, hstack({image, random_matrix(base.q, a0, extra, rng)}, a0));
}

}  // namespace

TEST_CASE("lifted stable modules carry valid coherent systems") {
  const PrimeField f(2);
  int seen = 0;
  for_each_lifted_stable(1, 2, 2, Side::minus, [&](const BRep& e) {
    if (seen++ % 97 != 0) return;
    const FpMatrix k = kernel<PrimeField>(e.stacked_D(), f);
    const ExtendedRep x = extend_minus(e, k);
    CHECK(x.i == hom_dims(e).h_from_s0);
    CHECK(validate_extended(x));
    CHECK(extended_is_semistable_raw(x));
    CHECK(q1(x) == e);
    const BRep down = q2(x);
    CHECK(down.dims == e.dims - DimVector{0, x.i, 0});
    CHECK(stability_criterion(down, Side::minus));
    const ExtendedRep empty = extend_minus(e, FpMatrix(e.dims.a_0, 0));
    CHECK(empty.i == 0);
    CHECK(validate_extended(empty));
    CHECK(extended_from_json(to_json(x)).A == x.A);
  });
  CHECK(seen > 0);
}

TEST_CASE("plus side systems") {
  std::mt19937_64 rng(31);
  int seen = 0, valid = 0;
  for_each_lifted_stable(1, 3, 2, Side::plus, [&](const BRep& e) {
    if (seen++ % 53 != 0) return;
    const auto x = random_plus(e, rng);
    if (!x) return;
    CHECK(extended_relations_hold(*x));
    CHECK(validate_extended(*x));
    ++valid;
    const BRep sub = q2p(*x);
    CHECK(sub.dims == e.dims - DimVector{0, x->i, 0});
    CHECK(check_relations(sub));
    CHECK(q1p(*x) == e);
  });
  CHECK(valid > 0);
  // a random base is almost never theta_+ stable
  const BRep unstable = BRep::zero(2, alpha(1, 3));
  CHECK_FALSE(validate_extended(extend_plus(unstable, FpMatrix(unstable.dims.a_0, 0))));
}

TEST_CASE("injectivity, surjectivity and relations") {
  const PrimeField f(2);
  BRep e;
  for_each_lifted_stable(1, 2, 2, Side::minus, [&](const BRep& m) {
    if (e.dims.is_zero()) e = m;
  });
  REQUIRE(hom_dims(e).h_from_s0 > 0);
  const FpMatrix k = kernel<PrimeField>(e.stacked_D(), f);
  ExtendedRep x = extend_minus(e, k.leftCols(1));
  CHECK(validate_extended(x));
  x.A.setZero();
  x.B = identity(e.dims.a_0).topRows(e.dims.a_0 - 1);
  CHECK(extended_relations_hold(x));
  CHECK_FALSE(validate_extended(x));  // A has a zero column
  ExtendedRep bad = extend_minus(e, k.leftCols(1));
  bad.A = FpMatrix::Zero(e.dims.a_0, 1);
  bad.A(0, 0) = 1;
  if (!f.mul(e.stacked_D(), bad.A).isZero()) CHECK_FALSE(extended_relations_hold(bad));
  ExtendedRep wrong = x;
  wrong.B = FpMatrix::Zero(1, 1);
  CHECK_THROWS_AS(validate_extended(wrong), ShapeError);
}

TEST_CASE("enumerated extended stability matches the lemma") {
  std::mt19937_64 rng(33);
  const std::vector<std::pair<int, int>> classes{{0, 1}, {1, 1}, {0, 2}, {1, 2}, {-1, 2}};
  int agree_true = 0, agree_false = 0;
  for (int t = 0; t < 600; ++t) {
    const auto [r, n] = classes[t % classes.size()];
    BRep base = random_representation(2, alpha(r, n), rng);
    if (t % 4 == 0 && alpha(r, n).a_0 >= 1)
      base = direct_sum(random_representation(2, alpha(r, n) - kE_0, rng), BRep::simple(2, 0));
    auto x = (t / classes.size()) % 2 == 0 ? random_minus(base, rng) : random_plus(base, rng);
    if (!x) continue;
    if (t % 5 == 1 && x->A.cols() >= 2) x->A.col(1) = x->A.col(0);  // break injectivity
    const bool lemma = validate_extended(*x);
    CHECK(extended_is_semistable_raw(*x) == lemma);
    (lemma ? agree_true : agree_false)++;
  }
  CHECK(agree_true > 20);
  CHECK(agree_false > 20);
}
