#include "p2flip/hodgepoly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace p2flip {

HodgePoly::HodgePoly(std::initializer_list<long long> coeffs) {
  for (auto c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

HodgePoly::HodgePoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

HodgePoly HodgePoly::monomial(BigInt coeff, int power) {
  if (power < 0) throw ParameterError("negative exponent in monomial");
  std::vector<BigInt> c(power + 1, BigInt(0));
  c[power] = std::move(coeff);
  return HodgePoly(std::move(c));
}

void HodgePoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt HodgePoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[k];
}

BigInt HodgePoly::evaluate(const BigInt& u) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

bool HodgePoly::is_palindromic() const {
  return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

bool HodgePoly::has_nonnegative_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c >= 0; });
}

HodgePoly& HodgePoly::operator+=(const HodgePoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  normalize();
  return *this;
}

HodgePoly& HodgePoly::operator-=(const HodgePoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  normalize();
  return *this;
}

HodgePoly& HodgePoly::operator*=(const HodgePoly& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> out(coeffs_.size() + other.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

HodgePoly operator-(HodgePoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

HodgePoly HodgePoly::shifted(int k) const {
  if (is_zero()) return *this;
  if (k < 0) throw ParameterError("negative shift");
  std::vector<BigInt> c(k, BigInt(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return HodgePoly(std::move(c));
}

std::string HodgePoly::to_t_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    if (k == 0 || mag != 1) os << mag;
    if (k > 0) os << "t^" << 2 * k;
    first = false;
  }
  return os.str();
}

HodgePoly gaussian_binomial(int k, int i) {
  if (k < 0 || i < 0 || i > k) return {};
  // Pascal recursion [k,i] = [k-1,i-1] + u^i [k-1,i], row by row.
  std::vector<HodgePoly> row{HodgePoly{1}};
  for (int m = 1; m <= k; ++m) {
    std::vector<HodgePoly> next(m + 1);
    next[0] = HodgePoly{1};
    next[m] = HodgePoly{1};
    for (int j = 1; j < m; ++j) next[j] = row[j - 1] + row[j].shifted(j);
    row = std::move(next);
  }
  return row[i];
}

HodgePoly hilb_p2_hodge(int n) {
  if (n < 0) throw ParameterError("hilb_p2_hodge: n must be nonnegative");
  // series[k] = coefficient of z^k; each factor 1/(1 - u^a z^m) is applied in place.
  std::vector<HodgePoly> series(n + 1);
  series[0] = HodgePoly{1};
  for (int m = 1; m <= n; ++m) {
    for (int a : {m - 1, m, m + 1}) {
      for (int k = m; k <= n; ++k) series[k] += series[k - m].shifted(a);
    }
  }
  return series[n];
}

HodgePoly p2_hodge() { return HodgePoly{1, 1, 1}; }

nlohmann::ordered_json to_json(const HodgePoly& p) {
  nlohmann::ordered_json j;
  j["variable"] = "t2";
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& c : p.coeffs()) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
      coeffs.push_back(static_cast<long long>(c));
    else
      coeffs.push_back(c.str());
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

HodgePoly hodge_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw ParameterError("polynomial JSON needs a \"coeffs\" array");
  if (j.contains("variable") && j["variable"] != "t2")
    throw ParameterError("unsupported polynomial variable; expected \"t2\"");
  std::vector<BigInt> coeffs;
  for (const auto& c : j["coeffs"]) {
    if (c.is_number_integer())
      coeffs.emplace_back(c.get<long long>());
    else if (c.is_string())
      coeffs.emplace_back(c.get<std::string>());
    else
      throw ParameterError("polynomial coefficients must be integers");
  }
  return HodgePoly(std::move(coeffs));
}

}  // namespace p2flip
