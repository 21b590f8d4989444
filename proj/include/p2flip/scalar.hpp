#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace p2flip {

// Expression templates are disabled so the types behave as plain values inside
// Eigen expressions and `auto` declarations.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParameterError : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct FieldMismatchError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  ResourceError(const std::string& what, BigInt estimate)
      : Error(what), estimate(std::move(estimate)) {}
  BigInt estimate;
};
struct DataRequiredError : Error {
  using Error::Error;
};
struct DataFormatError : Error {
  DataFormatError(const std::string& what, std::size_t line) : Error(what), line(line) {}
  std::size_t line;
};
struct InconsistencyError : Error {
  using Error::Error;
};
struct NotFoundError : Error {
  using Error::Error;
};

/// Canonical "p/q" rendering; integers are printed without a denominator.
std::string to_string(const Rational& x);
/// Parses "p/q", "p", or a decimal-free integer string.
Rational parse_rational(const std::string& text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw ParameterError("zero denominator");
  return Rational(num) / Rational(den);
}

}  // namespace p2flip

namespace Eigen {

template <>
struct NumTraits<p2flip::Rational> : GenericNumTraits<p2flip::Rational> {
  using Real = p2flip::Rational;
  using NonInteger = p2flip::Rational;
  using Nested = p2flip::Rational;
  using Literal = p2flip::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline Real highest() { return Real(0); }
  static inline Real lowest() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace p2flip {

using RVec3 = Eigen::Matrix<Rational, 3, 1>;
using RMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact test for the zero matrix (Eigen's isZero is tolerance based).
template <typename Derived>
bool is_exactly_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) return false;
  return true;
}

}  // namespace p2flip
