#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "p2flip/scalar.hpp"

namespace p2flip {

/// Integer polynomial in u = t^2 (t = xy): the virtual Hodge polynomial of a
/// variety of Tate type. Stored canonically with no trailing zero coefficients.
class HodgePoly {
 public:
  HodgePoly() = default;
  HodgePoly(std::initializer_list<long long> coeffs);
  explicit HodgePoly(std::vector<BigInt> coeffs);

  static HodgePoly monomial(BigInt coeff, int power);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  /// Coefficient of u^k, zero beyond the degree.
  BigInt coeff(int k) const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  BigInt evaluate(const BigInt& u) const;
  bool is_palindromic() const;
  bool has_nonnegative_coeffs() const;

  HodgePoly& operator+=(const HodgePoly& other);
  HodgePoly& operator-=(const HodgePoly& other);
  HodgePoly& operator*=(const HodgePoly& other);
  friend HodgePoly operator+(HodgePoly a, const HodgePoly& b) { return a += b; }
  friend HodgePoly operator-(HodgePoly a, const HodgePoly& b) { return a -= b; }
  friend HodgePoly operator*(HodgePoly a, const HodgePoly& b) { return a *= b; }
  friend HodgePoly operator-(HodgePoly a);
  friend bool operator==(const HodgePoly&, const HodgePoly&) = default;

  /// Multiplies by u^k.
  HodgePoly shifted(int k) const;

  /// Human rendering in t, highest power first: "t^4+t^2+1".
  std::string to_t_string() const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Gaussian binomial [k choose i]_u; zero when k < 0, i < 0 or i > k.
HodgePoly gaussian_binomial(int k, int i);

/// e(Gr(k, i)), the Grassmannian of i-planes in a k-dimensional space.
inline HodgePoly grassmannian_hodge(int k, int i) { return gaussian_binomial(k, i); }

/// Hodge polynomial of the Hilbert scheme of n points on P^2, read off the
/// generating function prod_{m>=1} 1/((1-u^{m-1}z^m)(1-u^m z^m)(1-u^{m+1}z^m)).
HodgePoly hilb_p2_hodge(int n);

/// e(P^2) = 1 + u + u^2.
HodgePoly p2_hodge();

/// {"variable":"t2","coeffs":[...]}; coefficients outside int64 are emitted as strings.
nlohmann::ordered_json to_json(const HodgePoly& p);
HodgePoly hodge_from_json(const nlohmann::json& j);

}  // namespace p2flip
