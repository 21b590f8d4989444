#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "p2flip/repcore.hpp"

namespace p2flip {

/// theta(beta) as a lexicographically ordered triple (main value, eps term, eps' term).
struct ThetaValue {
  Rational v0 = 0;
  Rational v1 = 0;
  Rational v2 = 0;

  /// -1, 0 or +1 in lexicographic order.
  int sign() const;
  friend bool operator==(const ThetaValue&, const ThetaValue&) = default;
};

/// A stability parameter with two symbolic infinitesimal levels.
struct Theta {
  RVec3 level0 = RVec3::Zero();
  RVec3 level1 = RVec3::Zero();
  RVec3 level2 = RVec3::Zero();

  Theta() = default;
  explicit Theta(RVec3 l0, RVec3 l1 = RVec3::Zero(), RVec3 l2 = RVec3::Zero())
      : level0(std::move(l0)), level1(std::move(l1)), level2(std::move(l2)) {}

  ThetaValue operator()(const DimVector& beta) const;
  bool annihilates(const DimVector& beta) const { return (*this)(beta).sign() == 0; }
  /// Replaces the infinitesimal by a concrete eps (eps' is dropped).
  RVec3 with_epsilon(const Rational& eps) const { return level0 + eps * level1; }

  friend bool operator==(const Theta&, const Theta&) = default;
};

struct NamedThetas {
  Theta theta0;
  Theta thetaP2;
  Theta theta_plus;
  Theta theta_minus;
};

/// theta0 = (-n+1, 0, n), thetaP2 = (-r-1, 1, r-1), theta_pm = theta0 +- eps (2n-1+r, -n, 0).
NamedThetas named_thetas(int r, int n);
/// The eps direction (2n-1+r, -n, 0).
RVec3 perturbation_direction(int r, int n);

/// Every proper nonzero submodule F has theta(F) >= 0. Throws ParameterError if
/// theta does not vanish on dims(e).
bool is_semistable(const BRep& e, const Theta& theta, const EnumerationGuard& guard = {});
/// Every proper nonzero submodule F has theta(F) > 0.
bool is_stable(const BRep& e, const Theta& theta, const EnumerationGuard& guard = {});

/// Same verdicts computed over the explicit list of submodules (slow; for cross-checks).
bool is_semistable_exhaustive(const BRep& e, const Theta& theta, const EnumerationGuard& guard = {});
bool is_stable_exhaustive(const BRep& e, const Theta& theta, const EnumerationGuard& guard = {});

enum class Side { minus, zero_ss, zero_stable, plus };

std::string to_string(Side side);
/// Accepts "minus", "plus", "zero_ss", "zero_stable" (and "zero" for zero_ss).
Side parse_side(const std::string& text);

/// The Kronecker-reduction characterisation of theta_-/theta_0/theta_+ (semi)stability.
/// Classes not of the form alpha_{r,n} are reported as not stable.
bool stability_criterion(const BRep& e, Side side);

/// The parameter checked by the brute-force route for each side.
Theta theta_for_side(int r, int n, Side side);

struct WallCandidate {
  DimVector witness_class;             // smallest witness
  std::vector<DimVector> witnesses;    // every beta inducing this line, sorted
  RVec3 ray;                           // primitive integral generator
  bool through_theta0 = false;
  bool through_thetaP2 = false;
};

/// Numerical wall candidates in alpha-perp: one entry per line theta(beta) = 0.
/// A line through theta0 or thetaP2 is oriented along that parameter.
std::vector<WallCandidate> candidate_walls(const DimVector& alpha);

/// E + S_0 with E a theta_- stable module of class alpha_{r-1,n} found by search.
BRep wall_witness_w0(int r, int n, int q);

nlohmann::ordered_json to_json(const Theta& theta);
Theta theta_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const RVec3& v);

}  // namespace p2flip
