#include "p2flip/kronecker.hpp"

#include "p2flip/stability.hpp"

namespace p2flip {

KroneckerRep KroneckerRep::zero(int q, int n) {
  if (n < 1) throw ParameterError("Kronecker module needs n >= 1");
  PrimeField{q};
  KroneckerRep g;
  g.q = q;
  g.n = n;
  for (auto& a : g.A) a = FpMatrix::Zero(n - 1, n);
  return g;
}

void validate_shape(const KroneckerRep& g) {
  if (g.n < 1) throw ParameterError("Kronecker module needs n >= 1");
  PrimeField{g.q};
  for (int i = 0; i < 3; ++i)
    if (g.A[i].rows() != g.n - 1 || g.A[i].cols() != g.n)
      throw ShapeError("A_" + std::to_string(i) + " must be (n-1) x n");
}

KroneckerRep kronecker_reduce(const BRep& e) {
  validate_shapes(e);
  if (!as_alpha(e.dims)) throw ShapeError("kronecker_reduce needs a class (n, a_0, n-1), got " + to_string(e.dims));
  const PrimeField f(e.q);
  KroneckerRep g = KroneckerRep::zero(e.q, e.dim_minus1());
  for (int i = 0; i < 3; ++i) g.A[i] = f.mul(e.D[(i + 2) % 3], e.C[(i + 1) % 3]);
  return g;
}

namespace {

void check_guard(const KroneckerRep& g, const KroneckerGuard& guard) {
  validate_shape(g);
  if (g.n > guard.max_n || g.q > guard.max_field) {
    const BigInt estimate = boost::multiprecision::pow(BigInt(g.q), g.n * g.n);
    throw ResourceError("Kronecker enumeration guard exceeded for n=" + std::to_string(g.n) + " over F_" +
                            std::to_string(g.q),
                        estimate);
  }
}

FpMatrix image_span(const KroneckerRep& g, const FpMatrix& u, const PrimeField& f) {
  return column_space(hstack({f.mul(g.A[0], u), f.mul(g.A[1], u), f.mul(g.A[2], u)}, g.n - 1), f);
}

}  // namespace

bool kronecker_theta0_stable(const KroneckerRep& g, const KroneckerGuard& guard) {
  check_guard(g, guard);
  const PrimeField f(g.q);
  const long long n = g.n;
  // Submodules with U = 0 have value n dim U_1 > 0 and are skipped.
  for (const auto& u : subspaces(g.q, g.n)) {
    if (u.cols() == 0) continue;
    const auto span = image_span(g, u, f).cols();
    if (u.cols() == n && span == n - 1) continue;  // whole module
    if ((1 - n) * u.cols() + n * span <= 0) return false;
  }
  return true;
}

bool kronecker_theta0_stable_exhaustive(const KroneckerRep& g, const KroneckerGuard& guard) {
  check_guard(g, guard);
  const PrimeField f(g.q);
  const long long n = g.n;
  for (const auto& u : subspaces(g.q, g.n)) {
    const FpMatrix span = image_span(g, u, f);
    for (const auto& u1 : subspaces(g.q, g.n - 1)) {
      if (!contains(u1, span, f)) continue;
      const long long du = u.cols(), d1 = u1.cols();
      if ((du == 0 && d1 == 0) || (du == n && d1 == n - 1)) continue;
      if ((1 - n) * du + n * d1 <= 0) return false;
    }
  }
  return true;
}

namespace {

// 3(n-1) x 3n block matrix [[0,-A2,A1],[A2,0,-A0],[-A1,A0,0]].
FpMatrix antisymmetric_block(const KroneckerRep& g, const PrimeField& f) {
  const Eigen::Index r = g.n - 1, c = g.n;
  FpMatrix m = FpMatrix::Zero(3 * r, 3 * c);
  const auto neg = [&](const FpMatrix& a) { return f.reduce(-a); };
  m.block(0, c, r, c) = neg(g.A[2]);
  m.block(0, 2 * c, r, c) = g.A[1];
  m.block(r, 0, r, c) = g.A[2];
  m.block(r, 2 * c, r, c) = neg(g.A[0]);
  m.block(2 * r, 0, r, c) = neg(g.A[1]);
  m.block(2 * r, c, r, c) = g.A[0];
  return m;
}

}  // namespace

BRep kron_to_minus(const KroneckerRep& g) {
  validate_shape(g);
  const PrimeField f(g.q);
  const int n = g.n;
  BRep e = BRep::zero(g.q, {n, 3 * n, n - 1});
  const FpMatrix d = antisymmetric_block(g, f);
  for (int i = 0; i < 3; ++i) {
    e.C[i].block(i * n, 0, n, n) = identity(n);
    e.D[i] = d.middleRows(i * (n - 1), n - 1);
  }
  return e;
}

BRep kron_to_plus(const KroneckerRep& g) {
  validate_shape(g);
  const PrimeField f(g.q);
  const int n = g.n;
  BRep e = BRep::zero(g.q, {n, 3 * n - 3, n - 1});
  const FpMatrix c = antisymmetric_block(g, f);
  for (int i = 0; i < 3; ++i) {
    e.C[i] = c.middleCols(i * n, n);
    e.D[i].block(0, i * (n - 1), n - 1, n - 1) = identity(n - 1);
  }
  return e;
}

BRep g_minus(const BRep& e) {
  if (!stability_criterion(e, Side::minus)) throw ParameterError("g_minus: input is not theta_- stable");
  return kron_to_minus(kronecker_reduce(e));
}

BRep g_plus(const BRep& e) {
  if (!stability_criterion(e, Side::plus)) throw ParameterError("g_plus: input is not theta_+ stable");
  return kron_to_plus(kronecker_reduce(e));
}

nlohmann::ordered_json to_json(const KroneckerRep& g) {
  nlohmann::ordered_json j;
  j["q"] = g.q;
  j["n"] = g.n;
  auto a = nlohmann::ordered_json::array();
  for (const auto& m : g.A) a.push_back(matrix_to_json(m));
  j["A"] = std::move(a);
  return j;
}

KroneckerRep kronecker_from_json(const nlohmann::json& j) {
  try {
    KroneckerRep g = KroneckerRep::zero(j.at("q").get<int>(), j.at("n").get<int>());
    const auto& a = j.at("A");
    if (!a.is_array() || a.size() != 3) throw ShapeError("\"A\" must hold three matrices");
    for (int i = 0; i < 3; ++i) g.A[i] = matrix_from_json(a[i], g.n - 1, g.n, g.q);
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed Kronecker JSON: ") + ex.what());
  }
}

}  // namespace p2flip
