#include "doctest.h"

#include <random>

#include "p2flip/kronecker.hpp"
#include "p2flip/oracle.hpp"

using namespace p2flip;

TEST_CASE("stability examples") {
  KroneckerRep g = KroneckerRep::zero(2, 2);
  CHECK_FALSE(kronecker_theta0_stable(g));
  g.A[0] << 1, 0;
  g.A[1] << 0, 1;
  CHECK(kronecker_theta0_stable(g));
  CHECK(kronecker_theta0_stable_exhaustive(g));
  CHECK(kronecker_theta0_stable(KroneckerRep::zero(3, 1)));
}

TEST_CASE("minimal span shortcut matches the exhaustive check") {
  std::mt19937_64 rng(21);
  for (int q : {2, 3})
    for (int n = 1; n <= 3; ++n)
      for (int t = 0; t < (n == 3 && q == 3 ? 10 : 60); ++t) {
        const KroneckerRep g = random_kronecker(q, n, rng);
        CHECK(kronecker_theta0_stable(g) == kronecker_theta0_stable_exhaustive(g));
      }
}

TEST_CASE("stable count for n = 2 over F_2") {
  // Unstable iff some line L has dim span(A_i L) = 0 (theta = -1) : count by hand.
  const PrimeField f(2);
  int stable = 0;
  KroneckerRep g = KroneckerRep::zero(2, 2);
  for (int bits = 0; bits < 64; ++bits) {
    for (int k = 0; k < 6; ++k) g.A[k / 2](0, k % 2) = (bits >> k) & 1;
    bool killed = false;
    for (const auto& line : subspaces_of_dim(2, 2, 1)) {
      bool all_zero = true;
      for (const auto& a : g.A) all_zero = all_zero && f.mul(a, line).isZero();
      killed = killed || all_zero;
    }
    stable += !killed;
    CHECK(kronecker_theta0_stable(g) == !killed);
  }
  CHECK(stable == 42);  // 64 minus the 22 tuples killing one of the 3 lines
}

TEST_CASE("transport to B-modules and back") {
  std::mt19937_64 rng(22);
  for (int n = 1; n <= 6; ++n) {
    const KroneckerRep g = random_kronecker(5, n, rng);
    const BRep m = kron_to_minus(g), p = kron_to_plus(g);
    CHECK(m.dims == alpha(n + 1, n));
    CHECK(p.dims == DimVector{n, 3 * n - 3, n - 1});
    CHECK(check_relations(m));
    CHECK(check_relations(p));
    CHECK(kronecker_reduce(m) == g);
    CHECK(kronecker_reduce(p) == g);
    CHECK(kronecker_from_json(to_json(g)) == g);
  }
  CHECK(kronecker_reduce(BRep::zero(2, alpha(1, 2))) == KroneckerRep::zero(2, 2));
  CHECK_THROWS(kronecker_reduce(BRep::zero(2, {1, 3, 1})));
}

TEST_CASE("g_minus and g_plus") {
  std::mt19937_64 rng(23);
  int minus_hits = 0, plus_hits = 0;
  for (int t = 0; t < 200; ++t) {
    const BRep e = random_representation(2, alpha(0, 2), rng);
    if (stability_criterion(e, Side::minus)) {
      const BRep gm = g_minus(e);
      CHECK(gm.dims == alpha(3, 2));
      CHECK(kronecker_reduce(gm) == kronecker_reduce(e));
      ++minus_hits;
    } else {
      CHECK_THROWS_AS(g_minus(e), ParameterError);
    }
    if (stability_criterion(e, Side::plus)) {
      CHECK(g_plus(e).dims == DimVector{2, 3, 1});
      ++plus_hits;
    } else {
      CHECK_THROWS_AS(g_plus(e), ParameterError);
    }
  }
  CHECK(minus_hits > 0);
  CHECK(plus_hits > 0);
}

TEST_CASE("guards") {
  KroneckerGuard guard;
  guard.max_n = 2;
  CHECK_THROWS_AS(kronecker_theta0_stable_exhaustive(KroneckerRep::zero(2, 3), guard), ResourceError);
  KroneckerRep bad = KroneckerRep::zero(2, 2);
  bad.A[1] = FpMatrix::Zero(2, 2);
  CHECK_THROWS_AS(validate_shape(bad), ShapeError);
}
