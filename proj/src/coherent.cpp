#include "p2flip/coherent.hpp"

#include <algorithm>

namespace p2flip {

ExtendedRep extend_minus(const BRep& base, const FpMatrix& v) {
  const PrimeField f(base.q);
  ExtendedRep x;
  x.base = base;
  x.side = Side::minus;
  x.A = column_space(v, f);
  x.i = static_cast<int>(x.A.cols());
  x.B = annihilator(x.A, base.dims.a_0, f);
  return x;
}

ExtendedRep extend_plus(const BRep& base, const FpMatrix& w) {
  const PrimeField f(base.q);
  ExtendedRep x;
  x.base = base;
  x.side = Side::plus;
  x.A = column_space(w, f);
  x.B = annihilator(x.A, base.dims.a_0, f);
  x.i = static_cast<int>(x.B.rows());
  return x;
}

void validate_extended_shapes(const ExtendedRep& x) {
  validate_shapes(x.base);
  if (x.side != Side::minus && x.side != Side::plus) throw ParameterError("extended side must be minus or plus");
  const Eigen::Index a0 = x.base.dims.a_0;
  if (x.i < 0 || x.i > a0) throw ParameterError("subspace dimension i out of range");
  const Eigen::Index a_cols = x.side == Side::minus ? x.i : a0 - x.i;
  const Eigen::Index b_rows = x.side == Side::minus ? a0 - x.i : x.i;
  if (x.A.rows() != a0 || x.A.cols() != a_cols) throw ShapeError("A has the wrong shape");
  if (x.B.rows() != b_rows || x.B.cols() != a0) throw ShapeError("B has the wrong shape");
}

bool extended_relations_hold(const ExtendedRep& x) {
  validate_extended_shapes(x);
  if (!check_relations(x.base)) return false;
  const PrimeField f(x.base.q);
  if (!f.mul(x.B, x.A).isZero()) return false;
  for (int j = 0; j < 3; ++j) {
    if (x.side == Side::minus && !f.mul(x.base.D[j], x.A).isZero()) return false;
    if (x.side == Side::plus && !f.mul(x.B, x.base.C[j]).isZero()) return false;
  }
  return true;
}

bool validate_extended(const ExtendedRep& x) {
  if (!extended_relations_hold(x)) return false;
  const PrimeField f(x.base.q);
  if (rank<PrimeField>(x.A, f) != x.A.cols()) return false;
  if (rank<PrimeField>(x.B, f) != x.B.rows()) return false;
  return stability_criterion(x.base, x.side);
}

bool extended_is_semistable_raw(const ExtendedRep& x, const EnumerationGuard& guard) {
  if (!extended_relations_hold(x)) return false;
  const auto rn = as_alpha(x.base.dims);
  if (!rn) throw ParameterError("extended stability needs a class alpha_{r,n}");
  const Theta theta = theta_for_side(rn->first, rn->second, x.side);
  const PrimeField f(x.base.q);
  const Eigen::Index a_src = x.A.cols(), b_tgt = x.B.rows();

  // For a base submodule U the worst extension takes the largest subspace at the
  // source of A (A^{-1} U_0) and the smallest at the target of B (B U_0).
  int best = 2;
  const auto consider = [&](const DimVector& dims, const FpMatrix& u0) {
    const Eigen::Index d_src = preimage(x.A, u0, f).cols();
    const Eigen::Index d_tgt = rank<PrimeField>(f.mul(x.B, u0), f);
    const bool zero = dims.is_zero() && d_src == 0 && d_tgt == 0;
    const bool whole = dims == x.base.dims && d_src == a_src && d_tgt == b_tgt;
    if (zero || whole) return;
    ThetaValue v = theta(dims);
    if (b_tgt > 0) v.v2 += Rational(d_tgt) / Rational(b_tgt);
    if (a_src > 0) v.v2 -= Rational(d_src) / Rational(a_src);
    best = std::min(best, v.sign());
  };
  consider(DimVector{}, FpMatrix(x.base.dims.a_0, 0));
  consider(x.base.dims, identity(x.base.dims.a_0));
  for_each_submodule(x.base, [&](const Submodule& s) { consider(s.dims, s.basis[1]); }, guard);
  return best >= 0;
}

BRep q1(const ExtendedRep& x) {
  if (x.side != Side::minus || !validate_extended(x)) throw ParameterError("q1 needs a valid minus-side system");
  return x.base;
}

BRep q2(const ExtendedRep& x) {
  if (x.side != Side::minus || !validate_extended(x)) throw ParameterError("q2 needs a valid minus-side system");
  return quotient_at_v0(x.base, x.A);
}

BRep q1p(const ExtendedRep& x) {
  if (x.side != Side::plus || !validate_extended(x)) throw ParameterError("q1p needs a valid plus-side system");
  return x.base;
}

BRep q2p(const ExtendedRep& x) {
  if (x.side != Side::plus || !validate_extended(x)) throw ParameterError("q2p needs a valid plus-side system");
  return restrict_to(x.base, {identity(x.base.dims.a_minus1), x.A, identity(x.base.dims.a_1)});
}

nlohmann::ordered_json to_json(const ExtendedRep& x) {
  nlohmann::ordered_json j = to_json(x.base);
  j["side"] = to_string(x.side);
  j["i"] = x.i;
  j["A"] = matrix_to_json(x.A);
  j["B"] = matrix_to_json(x.B);
  return j;
}

ExtendedRep extended_from_json(const nlohmann::json& j) {
  ExtendedRep x;
  x.base = brep_from_json(j);
  try {
    x.side = j.contains("side") ? parse_side(j.at("side").get<std::string>()) : Side::minus;
    x.i = j.at("i").get<int>();
    const Eigen::Index a0 = x.base.dims.a_0;
    if (x.i < 0 || x.i > a0) throw ParameterError("subspace dimension i out of range");
    const bool minus = x.side == Side::minus;
    x.A = matrix_from_json(j.at("A"), a0, minus ? x.i : a0 - x.i, x.base.q);
    x.B = matrix_from_json(j.at("B"), minus ? a0 - x.i : x.i, a0, x.base.q);
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed extended JSON: ") + ex.what());
  }
  validate_extended_shapes(x);
  return x;
}

}  // namespace p2flip
