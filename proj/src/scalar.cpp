#include "p2flip/scalar.hpp"

#include <sstream>

namespace p2flip {

std::string to_string(const Rational& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << '/' << denominator(x);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw ParameterError("zero denominator in rational '" + text + "'");
    return Rational(num) / Rational(den);
  } catch (const std::runtime_error&) {
    throw ParameterError("malformed rational '" + text + "'");
  }
}

}  // namespace p2flip
