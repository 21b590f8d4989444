#include "p2flip/bridgeland.hpp"

#include <numeric>

#include "p2flip/linalg.hpp"

namespace p2flip {

namespace {

void check_range(const Rational& s) {
  if (s <= -1 || s >= 1) throw ParameterError("s must lie in (-1, 1), got " + to_string(s));
}

CentralCharge exceptional_formula(const Rational& s) {
  CentralCharge z;
  z.re = RVec3((-s - 1) / 2, Rational(1), (-s + 1) / 2);
  z.im = RVec3(Rational(0), Rational(1), Rational(0));
  return z;
}

const std::array<DimVector, 3> kBasis{kE_minus1, kE_0, kE_1};

// Eigen's product kernels trip over the multiprecision traits, so multiply by hand.
template <int C>
Eigen::Matrix<Rational, 2, C> product(const RMat2& a, const Eigen::Matrix<Rational, 2, C>& b) {
  Eigen::Matrix<Rational, 2, C> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < C; ++j) out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return out;
}

}  // namespace

RMat23 CentralCharge::matrix() const {
  RMat23 m;
  m.row(0) = re.transpose();
  m.row(1) = im.transpose();
  return m;
}

CentralCharge z_exceptional(const Rational& s) {
  check_range(s);
  return exceptional_formula(s);
}

CentralCharge z_geometric_normalized(const Rational& s) {
  check_range(s);
  CentralCharge z;
  for (int k = 0; k < 3; ++k) {
    const ChernVector ch = chern_of_class(kBasis[k]);
    const Rational r(ch.r), c1(ch.c1);
    z.re(k) = -ch.ch2() + c1 * s - r * (2 * s * s - 1) / 2;
    z.im(k) = c1 - r * s;
  }
  return z;
}

Rational wall_parameter(int n) {
  if (n < 1) throw ParameterError("wall_parameter needs n >= 1");
  return Rational(-1) / Rational(2 * n - 1);
}

Theta tilde_theta(const Rational& s, int n) {
  // Polynomial in s, so the closed interval is allowed: s0 = -1 for n = 1.
  if (s < -1 || s > 1) throw ParameterError("s must lie in [-1, 1], got " + to_string(s));
  if (n < 1) throw ParameterError("tilde_theta needs n >= 1");
  const CentralCharge z = exceptional_formula(s);
  const DimVector a0 = alpha(0, n);
  const Rational re_a = z.real(a0), im_a = z.imag(a0);
  RVec3 t;
  for (int k = 0; k < 3; ++k) t(k) = z.re(k) * im_a - re_a * z.im(k);
  return Theta(t);
}

GL2Match gl2_match(const Rational& s) {
  const RMat23 geo = z_geometric_normalized(s).matrix();
  const RMat23 exc = z_exceptional(s).matrix();
  // Solve on the first pair of independent columns, then demand an exact fit on all three.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      RMat2 sub;
      sub << geo(0, a), geo(0, b), geo(1, a), geo(1, b);
      const Rational d = sub(0, 0) * sub(1, 1) - sub(0, 1) * sub(1, 0);
      if (d == 0) continue;
      RMat2 inv;
      inv << sub(1, 1) / d, -sub(0, 1) / d, -sub(1, 0) / d, sub(0, 0) / d;
      RMat2 target;
      target << exc(0, a), exc(0, b), exc(1, a), exc(1, b);
      GL2Match m;
      m.g = product(target, inv);
      const RMat23 fit = product(m.g, geo);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
          if (fit(i, k) != exc(i, k)) throw InconsistencyError("no exact GL(2) match at s = " + to_string(s));
      m.det = m.g(0, 0) * m.g(1, 1) - m.g(0, 1) * m.g(1, 0);
      m.det_positive = m.det > 0;
      return m;
    }
  throw InconsistencyError("geometric charge has rank below 2 at s = " + to_string(s));
}

RVec3 kernel_line(const CentralCharge& z) {
  const RationalField f;
  const RMatrix m = z.matrix();
  const RMatrix k = kernel<RationalField>(m, f);
  if (k.cols() != 1) throw InconsistencyError("central charge does not have rank 2");
  // Scale to a primitive integer vector with a positive leading entry.
  BigInt den = 1;
  for (int i = 0; i < 3; ++i) den = boost::multiprecision::lcm(den, denominator(k(i, 0)));
  RVec3 v;
  BigInt g = 0;
  for (int i = 0; i < 3; ++i) {
    v(i) = k(i, 0) * Rational(den);
    g = boost::multiprecision::gcd(g, BigInt(abs(numerator(v(i)))));
  }
  for (int i = 0; i < 3; ++i) v(i) /= Rational(g);
  for (int i = 0; i < 3; ++i)
    if (v(i) != 0) {
      if (v(i) < 0) v = -v;
      break;
    }
  return v;
}

nlohmann::ordered_json to_json(const CentralCharge& z) {
  nlohmann::ordered_json j;
  j["re"] = to_json(z.re);
  j["im"] = to_json(z.im);
  return j;
}

}  // namespace p2flip
