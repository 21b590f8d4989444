#pragma once

#include <Eigen/Core>

#include "json.hpp"

#include "p2flip/repcore.hpp"
#include "p2flip/stability.hpp"

namespace p2flip {

using RMat2 = Eigen::Matrix<Rational, 2, 2>;
using RMat23 = Eigen::Matrix<Rational, 2, 3>;

/// A linear map K(B) -> C written as real and imaginary rows over (e_{-1}, e_0, e_1).
struct CentralCharge {
  RVec3 re = RVec3::Zero();
  RVec3 im = RVec3::Zero();

  RMat23 matrix() const;
  Rational real(const DimVector& beta) const { return re.dot(beta.as_rational()); }
  Rational imag(const DimVector& beta) const { return im.dot(beta.as_rational()); }
};

/// Re = ((-s-1)/2, 1, (-s+1)/2), Im = (0, 1, 0). Requires -1 < s < 1.
CentralCharge z_exceptional(const Rational& s);

/// Z_{(sH,tH)} with t = sqrt(1-s^2): Re = -ch2 + c1 s - r(2s^2-1)/2, and the
/// imaginary row divided by t, c1 - r s, which keeps everything rational.
CentralCharge z_geometric_normalized(const Rational& s);

/// s_0 = -1/(2n-1).
Rational wall_parameter(int n);

/// theta(beta) = Re Z(beta) Im Z(alpha_0) - Re Z(alpha_0) Im Z(beta) for Z = z_exceptional(s), s in [-1, 1].
Theta tilde_theta(const Rational& s, int n);

struct GL2Match {
  RMat2 g;
  Rational det = 0;
  bool det_positive = false;
};

/// The 2x2 matrix g with g * z_geometric_normalized(s) = z_exceptional(s), exactly.
/// Throws InconsistencyError when no exact solution exists.
GL2Match gl2_match(const Rational& s);

/// Primitive integral generator of the kernel line (the charges have rank 2).
RVec3 kernel_line(const CentralCharge& z);

nlohmann::ordered_json to_json(const CentralCharge& z);

}  // namespace p2flip
