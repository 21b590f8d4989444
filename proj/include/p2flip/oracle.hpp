#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "p2flip/kronecker.hpp"
#include "p2flip/repcore.hpp"
#include "p2flip/stability.hpp"

namespace p2flip {

struct CountOptions {
  BigInt guard = BigInt(1) << 34;  // budget on enumerated C-tuples
  int jobs = 1;
};

/// Parses "17179869184", "2^34" or "1e6"-free integer syntax.
BigInt parse_guard(const std::string& text);

struct CountReport {
  DimVector alpha;
  int q = 2;
  Side side = Side::minus;
  BigInt stable_reps = 0;
  BigInt gauge_order = 1;
  Rational point_count = 0;
  std::chrono::duration<double> elapsed{0};
  BigInt states_visited = 0;
};

/// Exhaustive count of stable (C, D) tuples of class alpha: C-tuples are
/// enumerated directly, D is drawn from the solution space of the relations.
CountReport count_stable(const DimVector& alpha, Side side, int q, const CountOptions& options = {});

struct StratifiedCount {
  CountReport total;
  std::map<int, BigInt> stable_reps;  // by Brill-Noether index
  std::map<int, Rational> point_count;
};

/// count_stable bucketed by Hom(S_0, E) (minus) or Hom(E, S_0) (plus).
StratifiedCount stratified_count(const DimVector& alpha, Side side, int q, const CountOptions& options = {});

/// The first stable module in enumeration order, if any.
std::optional<BRep> find_stable(const DimVector& alpha, Side side, int q, const CountOptions& options = {});

/// Every theta_- stable module of class alpha_{r,n} is a quotient of
/// kron_to_minus(G) by S_0 (x) V with G stable and V an (n+1-r)-subspace of the
/// common kernel of the D_j; every theta_+ stable one is the subrepresentation
/// of kron_to_plus(G) on a (2n-1+r)-subspace containing the image of C. Visits
/// those modules for every stable Kronecker tuple G (not up to isomorphism).
void for_each_lifted_stable(int r, int n, int q, Side side, const std::function<void(const BRep&)>& visit,
                            const CountOptions& options = {});

/// Point count of the stable locus obtained by counting through the lift
/// (sum over stable G of a Gaussian binomial at u = q, divided by the gauge group).
Rational lifted_point_count(int r, int n, int q, Side side, const CountOptions& options = {});

/// A uniformly random C-tuple with D drawn uniformly from the relation solution space.
BRep random_representation(int q, const DimVector& dims, std::mt19937_64& rng);
KroneckerRep random_kronecker(int q, int n, std::mt19937_64& rng);

nlohmann::ordered_json to_json(const CountReport& report, bool include_elapsed = true);

}  // namespace p2flip
