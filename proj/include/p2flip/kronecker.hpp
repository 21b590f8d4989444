#pragma once

#include <array>

#include "json.hpp"

#include "p2flip/repcore.hpp"

namespace p2flip {

/// Three maps A_i : F^n -> F^{n-1}.
struct KroneckerRep {
  int q = 2;
  int n = 1;
  std::array<FpMatrix, 3> A;

  static KroneckerRep zero(int q, int n);
  friend bool operator==(const KroneckerRep&, const KroneckerRep&) = default;
};

void validate_shape(const KroneckerRep& g);

/// A_i = D_{i+2} C_{i+1}, indices mod 3. Requires dims(e) = alpha_{r,n}.
KroneckerRep kronecker_reduce(const BRep& e);

struct KroneckerGuard {
  int max_n = 5;
  int max_field = 5;
};

/// (-n+1) dim U + n dim U_1 > 0 for every proper nonzero submodule, checked
/// with U_1 = span(A_i U) (larger U_1 only raise the value).
bool kronecker_theta0_stable(const KroneckerRep& g, const KroneckerGuard& guard = {});
/// The same verdict over every pair (U, U_1) with span(A_i U) inside U_1.
bool kronecker_theta0_stable_exhaustive(const KroneckerRep& g, const KroneckerGuard& guard = {});

/// Class (n, 3n, n-1): C_i are the block inclusions and stacked D is
/// [[0,-A2,A1],[A2,0,-A0],[-A1,A0,0]].
BRep kron_to_minus(const KroneckerRep& g);
/// Class (n, 3n-3, n-1): stacked C is [[0,-A2,A1],[A2,0,-A0],[-A1,A0,0]] and
/// D_j are the block projections.
BRep kron_to_plus(const KroneckerRep& g);

/// kron_to_minus(kronecker_reduce(e)); e must satisfy the theta_- criterion.
/// When Hom(S_0, e) != 0 the result is the image of the S-equivalence class
/// S_0^i + E' rather than a literal universal extension of e.
BRep g_minus(const BRep& e);
/// kron_to_plus(kronecker_reduce(e)); e must satisfy the theta_+ criterion.
BRep g_plus(const BRep& e);

nlohmann::ordered_json to_json(const KroneckerRep& g);
KroneckerRep kronecker_from_json(const nlohmann::json& j);

}  // namespace p2flip
