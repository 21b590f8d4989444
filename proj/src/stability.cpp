#include "p2flip/stability.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <Eigen/Geometry>

#include "p2flip/kronecker.hpp"
#include "p2flip/oracle.hpp"

namespace p2flip {

int ThetaValue::sign() const {
  for (const Rational* v : {&v0, &v1, &v2}) {
    if (*v > 0) return 1;
    if (*v < 0) return -1;
  }
  return 0;
}

ThetaValue Theta::operator()(const DimVector& beta) const {
  const RVec3 b = beta.as_rational();
  return {level0.dot(b), level1.dot(b), level2.dot(b)};
}

RVec3 perturbation_direction(int r, int n) {
  return RVec3(Rational(2 * n - 1 + r), Rational(-n), Rational(0));
}

NamedThetas named_thetas(int r, int n) {
  if (n < 1) throw ParameterError("named_thetas needs n >= 1");
  const RVec3 t0(Rational(1 - n), Rational(0), Rational(n));
  const RVec3 dir = perturbation_direction(r, n);
  return {Theta(t0), Theta(RVec3(Rational(-r - 1), Rational(1), Rational(r - 1))), Theta(t0, dir),
          Theta(t0, -dir)};
}

Theta theta_for_side(int r, int n, Side side) {
  const auto t = named_thetas(r, n);
  switch (side) {
    case Side::minus: return t.theta_minus;
    case Side::plus: return t.theta_plus;
    default: return t.theta0;
  }
}

namespace {

void require_annihilates(const BRep& e, const Theta& theta) {
  if (!theta.annihilates(e.dims))
    throw ParameterError("theta does not vanish on the class " + to_string(e.dims));
}

// Minimum lexicographic sign of theta over proper nonzero submodules; +2 when there are none.
// theta is linear in dim U_0, so each frame only needs the ends of its admissible range.
int min_sign(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  require_annihilates(e, theta);
  int best = 2;
  for_each_submodule_frame(
      e,
      [&](const SubmoduleFrame& fr) {
        if (best < 0) return;
        for (int d0 : {fr.d0_lo, fr.d0_lo + 1, fr.d0_hi - 1, fr.d0_hi}) {
          if (d0 < fr.d0_lo || d0 > fr.d0_hi) continue;
          const DimVector dims{fr.d_minus1, d0, fr.d_1};
          if (dims.is_zero() || dims == e.dims) continue;
          best = std::min(best, theta(dims).sign());
        }
      },
      guard);
  return best;
}

int min_sign_exhaustive(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  require_annihilates(e, theta);
  int best = 2;
  for_each_submodule(e, [&](const Submodule& s) { best = std::min(best, theta(s.dims).sign()); }, guard);
  return best;
}

}  // namespace

bool is_semistable(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  return min_sign(e, theta, guard) >= 0;
}

bool is_stable(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  return min_sign(e, theta, guard) > 0;
}

bool is_semistable_exhaustive(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  return min_sign_exhaustive(e, theta, guard) >= 0;
}

bool is_stable_exhaustive(const BRep& e, const Theta& theta, const EnumerationGuard& guard) {
  return min_sign_exhaustive(e, theta, guard) > 0;
}

std::string to_string(Side side) {
  switch (side) {
    case Side::minus: return "minus";
    case Side::zero_ss: return "zero_ss";
    case Side::zero_stable: return "zero_stable";
    case Side::plus: return "plus";
  }
  return "?";
}

Side parse_side(const std::string& text) {
  if (text == "minus") return Side::minus;
  if (text == "plus") return Side::plus;
  if (text == "zero_ss" || text == "zero") return Side::zero_ss;
  if (text == "zero_stable") return Side::zero_stable;
  throw ParameterError("unknown side '" + text + "'");
}

bool stability_criterion(const BRep& e, Side side) {
  if (!as_alpha(e.dims)) return false;
  KroneckerGuard unlimited{std::numeric_limits<int>::max(), kMaxPrime};
  if (!kronecker_theta0_stable(kronecker_reduce(e), unlimited)) return false;
  const HomDims h = hom_dims(e);
  switch (side) {
    case Side::minus: return h.h_to_s0 == 0;
    case Side::plus: return h.h_from_s0 == 0;
    case Side::zero_ss: return true;
    case Side::zero_stable: return h.h_to_s0 == 0 && h.h_from_s0 == 0;
  }
  return false;
}

namespace {

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
}

struct IntVec {
  std::int64_t x, y, z;
  auto operator<=>(const IntVec&) const = default;
};

IntVec primitive(IntVec v) {
  const auto g = gcd3(v.x, v.y, v.z);
  v = {v.x / g, v.y / g, v.z / g};
  const std::int64_t lead = v.x != 0 ? v.x : (v.y != 0 ? v.y : v.z);
  if (lead < 0) v = {-v.x, -v.y, -v.z};
  return v;
}

bool parallel(const IntVec& a, const RVec3& b) {
  const RVec3 av(Rational(a.x), Rational(a.y), Rational(a.z));
  return is_exactly_zero(av.cross(b)) && !is_exactly_zero(b);
}

}  // namespace

std::vector<WallCandidate> candidate_walls(const DimVector& alpha) {
  if (!alpha.is_nonnegative() || alpha.is_zero()) throw ParameterError("candidate_walls needs a nonzero class");
  std::map<IntVec, std::vector<DimVector>> lines;
  for (std::int64_t b0 = 0; b0 <= alpha.a_minus1; ++b0)
    for (std::int64_t b1 = 0; b1 <= alpha.a_0; ++b1)
      for (std::int64_t b2 = 0; b2 <= alpha.a_1; ++b2) {
        const DimVector beta{b0, b1, b2};
        // alpha x beta vanishes exactly when beta is a multiple of alpha (incl. 0 and alpha).
        const IntVec cross{alpha.a_0 * b2 - alpha.a_1 * b1, alpha.a_1 * b0 - alpha.a_minus1 * b2,
                           alpha.a_minus1 * b1 - alpha.a_0 * b0};
        if (cross.x == 0 && cross.y == 0 && cross.z == 0) continue;
        lines[primitive(cross)].push_back(beta);
      }

  std::optional<NamedThetas> named;
  if (const auto rn = as_alpha(alpha)) named = named_thetas(rn->first, rn->second);

  std::vector<WallCandidate> out;
  for (auto& [ray, witnesses] : lines) {
    WallCandidate w;
    std::sort(witnesses.begin(), witnesses.end());
    w.witnesses = witnesses;
    w.witness_class = witnesses.front();
    w.ray = RVec3(Rational(ray.x), Rational(ray.y), Rational(ray.z));
    if (named) {
      for (auto [flag, theta] : {std::pair{&w.through_theta0, &named->theta0.level0},
                                 std::pair{&w.through_thetaP2, &named->thetaP2.level0}}) {
        if (!parallel(ray, *theta)) continue;
        *flag = true;
        if (w.ray.dot(*theta) < 0) w.ray = -w.ray;
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

BRep wall_witness_w0(int r, int n, int q) {
  if (r < 1 || n < 1) throw ParameterError("wall_witness_w0 needs r >= 1 and n >= 1");
  if (n < r - 1) throw ParameterError("wall_witness_w0 needs n >= r-1");
  const auto e = find_stable(alpha(r - 1, n), Side::minus, q);
  if (!e) throw NotFoundError("no theta_- stable module of class " + to_string(alpha(r - 1, n)) + " over F_" +
                              std::to_string(q));
  return direct_sum(*e, BRep::simple(q, 0));
}

nlohmann::ordered_json to_json(const RVec3& v) {
  return nlohmann::ordered_json::array({to_string(v(0)), to_string(v(1)), to_string(v(2))});
}

nlohmann::ordered_json to_json(const Theta& theta) {
  nlohmann::ordered_json j;
  j["level0"] = to_json(theta.level0);
  j["level1"] = to_json(theta.level1);
  j["level2"] = to_json(theta.level2);
  return j;
}

Theta theta_from_json(const nlohmann::json& j) {
  const auto read = [&](const char* key) {
    RVec3 v = RVec3::Zero();
    if (!j.contains(key)) return v;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 3) throw ParameterError(std::string("theta level must have three entries: ") + key);
    for (int k = 0; k < 3; ++k)
      v(k) = a[k].is_string() ? parse_rational(a[k].get<std::string>()) : Rational(a[k].get<long long>());
    return v;
  };
  return Theta(read("level0"), read("level1"), read("level2"));
}

}  // namespace p2flip
