#pragma once

#include "json.hpp"

#include "p2flip/repcore.hpp"
#include "p2flip/stability.hpp"

namespace p2flip {

/// A module over the extended quiver: a base B-module with a subspace of
/// dimension i at v_0 (minus side) or a quotient of dimension i (plus side).
///
/// minus: A is a_0 x i with D_j A = 0; B is (a_0-i) x a_0 with B A = 0 (the quotient by im A).
/// plus:  B is i x a_0 with B C_j = 0; A is a_0 x (a_0-i) with B A = 0 (the inclusion of ker B).
struct ExtendedRep {
  BRep base;
  Side side = Side::minus;
  int i = 0;
  FpMatrix A;
  FpMatrix B;
};

/// Builds the minus-side structure from a subspace V (columns) of the common kernel of the D_j.
ExtendedRep extend_minus(const BRep& base, const FpMatrix& v);
/// Builds the plus-side structure from a subspace W (columns) containing every im C_j.
ExtendedRep extend_plus(const BRep& base, const FpMatrix& w);

/// Throws ShapeError when A or B disagree with the declared side and i.
void validate_extended_shapes(const ExtendedRep& x);
bool extended_relations_hold(const ExtendedRep& x);

/// Relations hold, A injective, B surjective and the base satisfies the criterion of its side.
bool validate_extended(const ExtendedRep& x);

/// Extended theta: theta_pm on the base, eps' weights 1/dim on the target of B
/// and -1/dim on the source of A (a vertex of dimension 0 carries no weight),
/// decided by enumerating subrepresentations.
bool extended_is_semistable_raw(const ExtendedRep& x, const EnumerationGuard& guard = {});

/// Forgets the extra structure.
BRep q1(const ExtendedRep& x);
/// Quotient of the base by S_0 (x) im A; class alpha_{r,n} -> alpha_{r-i,n}.
BRep q2(const ExtendedRep& x);
BRep q1p(const ExtendedRep& x);
/// Subrepresentation of the base on ker B at v_0; class alpha_{r,n} -> alpha_{r-i,n}.
BRep q2p(const ExtendedRep& x);

nlohmann::ordered_json to_json(const ExtendedRep& x);
ExtendedRep extended_from_json(const nlohmann::json& j);

}  // namespace p2flip
