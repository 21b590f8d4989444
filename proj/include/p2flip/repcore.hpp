#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "p2flip/linalg.hpp"

namespace p2flip {

/// A class in K(B) = Z e_{-1} + Z e_0 + Z e_1. Signed values are allowed for
/// K-theory arithmetic; representation constructors reject negative entries.
struct DimVector {
  std::int64_t a_minus1 = 0;
  std::int64_t a_0 = 0;
  std::int64_t a_1 = 0;

  std::int64_t total() const { return a_minus1 + a_0 + a_1; }
  bool is_nonnegative() const { return a_minus1 >= 0 && a_0 >= 0 && a_1 >= 0; }
  bool is_zero() const { return a_minus1 == 0 && a_0 == 0 && a_1 == 0; }
  RVec3 as_rational() const { return RVec3(Rational(a_minus1), Rational(a_0), Rational(a_1)); }

  friend DimVector operator+(DimVector a, const DimVector& b) {
    return {a.a_minus1 + b.a_minus1, a.a_0 + b.a_0, a.a_1 + b.a_1};
  }
  friend DimVector operator-(DimVector a, const DimVector& b) {
    return {a.a_minus1 - b.a_minus1, a.a_0 - b.a_0, a.a_1 - b.a_1};
  }
  friend DimVector operator*(std::int64_t k, const DimVector& a) {
    return {k * a.a_minus1, k * a.a_0, k * a.a_1};
  }
  friend auto operator<=>(const DimVector&, const DimVector&) = default;
};

std::string to_string(const DimVector& d);

inline constexpr DimVector kE_minus1{1, 0, 0};
inline constexpr DimVector kE_0{0, 1, 0};
inline constexpr DimVector kE_1{0, 0, 1};

/// alpha_{r,n} = (n, 2n-1+r, n-1). Throws ParameterError on a negative entry or n < 1.
DimVector alpha(int r, int n);

/// If d = alpha_{r,n} for some n >= 1, returns (r, n).
std::optional<std::pair<int, int>> as_alpha(const DimVector& d);

/// Chern character (rank, c1, ch2) with ch2 stored as a count of halves.
struct ChernVector {
  std::int64_t r = 0;
  std::int64_t c1 = 0;
  std::int64_t ch2_halves = 0;

  Rational ch2() const { return Rational(ch2_halves) / 2; }
  friend bool operator==(const ChernVector&, const ChernVector&) = default;
};

/// Linear extension of e_{-1} -> (1,-1,1/2), e_0 -> (-1,0,0), e_1 -> (1,1,1/2).
ChernVector chern_of_class(const DimVector& beta);

/// chi(beta, gamma) = sum_v beta_v gamma_v - 3(beta_{-1} gamma_0 + beta_0 gamma_1) + 6 beta_{-1} gamma_1.
std::int64_t euler_form(const DimVector& beta, const DimVector& gamma);

/// A module over B: C_i : F^{a_{-1}} -> F^{a_0} and D_j : F^{a_0} -> F^{a_1}.
struct BRep {
  int q = 2;
  DimVector dims;
  std::array<FpMatrix, 3> C;
  std::array<FpMatrix, 3> D;

  /// All-zero module of the given class.
  static BRep zero(int q, const DimVector& dims);
  /// The simple module S_k at vertex k in {-1, 0, 1}.
  static BRep simple(int q, int vertex);

  PrimeField field() const { return PrimeField(q); }
  int dim_minus1() const { return static_cast<int>(dims.a_minus1); }
  int dim_0() const { return static_cast<int>(dims.a_0); }
  int dim_1() const { return static_cast<int>(dims.a_1); }

  /// (C_0 | C_1 | C_2), a_0 x 3a_{-1}.
  FpMatrix stacked_C() const;
  /// (D_0 ; D_1 ; D_2), 3a_1 x a_0.
  FpMatrix stacked_D() const;

  friend bool operator==(const BRep&, const BRep&) = default;
};

/// Throws ShapeError when matrix shapes disagree with dims, ParameterError on a
/// bad field or a negative dimension.
void validate_shapes(const BRep& e);

/// D_j C_i + D_i C_j = 0 for i < j and D_i C_i = 0. Shape problems throw.
bool check_relations(const BRep& e);

BRep direct_sum(const BRep& a, const BRep& b);

struct HomDims {
  int h_from_s0 = 0;  // dim Hom(S_0, E) = dim of the common kernel of the D_j
  int h_to_s0 = 0;    // dim Hom(E, S_0) = a_0 - rank(C_0 | C_1 | C_2)
  friend bool operator==(const HomDims&, const HomDims&) = default;
};
HomDims hom_dims(const BRep& e);

struct HomExt {
  int hom = 0;
  int ext1 = 0;
  int ext2 = 0;
  friend bool operator==(const HomExt&, const HomExt&) = default;
};

/// Cohomology of the three-term complex computing Hom/Ext^1/Ext^2(M, N).
HomExt hom_ext_complex(const BRep& m, const BRep& n);

/// Guard for subspace enumerations.
struct EnumerationGuard {
  int max_total_dim = 10;
  int max_field = 5;
};

/// A graded subspace triple closed under every C_i and D_j.
struct Submodule {
  DimVector dims;
  std::array<FpMatrix, 3> basis;  // column bases of the pieces at v_{-1}, v_0, v_1
};

/// Visits every proper nonzero submodule exactly once. Throws ResourceError
/// when the guard is exceeded.
void for_each_submodule(const BRep& e, const std::function<void(const Submodule&)>& visit,
                        const EnumerationGuard& guard = {});
std::vector<Submodule> submodules(const BRep& e, const EnumerationGuard& guard = {});

/// One (U_{-1}, U_1) pair; the U_0 admissible for it have dimensions filling [d0_lo, d0_hi].
/// The zero and the whole module may fall inside this range.
struct SubmoduleFrame {
  int d_minus1 = 0;
  int d0_lo = 0;
  int d0_hi = 0;
  int d_1 = 0;
};
void for_each_submodule_frame(const BRep& e, const std::function<void(const SubmoduleFrame&)>& visit,
                              const EnumerationGuard& guard = {});

/// For fixed C the relations are linear in each row of D. Returns, as columns of
/// length 3a_0, a basis of the admissible rows (row_k(D_0) | row_k(D_1) | row_k(D_2)).
FpMatrix relation_row_space(int q, const std::array<FpMatrix, 3>& C, Eigen::Index a0);

/// The restriction of e to a submodule given by column bases (must be closed).
BRep restrict_to(const BRep& e, const std::array<FpMatrix, 3>& basis);

/// Quotient of e by the submodule S_0 ⊗ span(cols) for cols inside the common kernel of the D_j.
BRep quotient_at_v0(const BRep& e, const FpMatrix& cols);

nlohmann::ordered_json to_json(const BRep& e);
BRep brep_from_json(const nlohmann::json& j);

nlohmann::ordered_json matrix_to_json(const FpMatrix& m);
FpMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols, int q);

}  // namespace p2flip
