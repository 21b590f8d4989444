#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "p2flip/scalar.hpp"

namespace p2flip {

/// Dense matrix over a prime field; entries are residues in [0, q).
using FpMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Largest modulus accepted anywhere in the library. Keeps every dense
/// product of residues inside 32-bit accumulators.
inline constexpr int kMaxPrime = 251;

bool is_prime(int q);

/// Arithmetic in F_q for a prime q <= kMaxPrime.
class PrimeField {
 public:
  using Scalar = int;

  explicit PrimeField(int q);

  int order() const { return q_; }
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(Scalar a) const { return a == 0; }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % q_; }
  Scalar sub(Scalar a, Scalar b) const { return (a - b + q_) % q_; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % q_; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : q_ - a; }
  Scalar inv(Scalar a) const;
  Scalar reduce(long long a) const {
    long long r = a % q_;
    return static_cast<Scalar>(r < 0 ? r + q_ : r);
  }

  template <typename Derived>
  FpMatrix reduce(const Eigen::MatrixBase<Derived>& m) const {
    FpMatrix out = m.template cast<int>();
    for (Eigen::Index k = 0; k < out.size(); ++k) out.data()[k] = reduce(out.data()[k]);
    return out;
  }

  /// Product of residue matrices, reduced.
  template <typename A, typename B>
  FpMatrix mul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) const {
    return reduce((a * b).eval());
  }

 private:
  int q_;
  std::vector<int> inverse_;
};

/// Exact arithmetic in Q.
struct RationalField {
  using Scalar = Rational;
  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  bool is_zero(const Scalar& a) const { return a == 0; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  Scalar neg(const Scalar& a) const { return -a; }
  Scalar inv(const Scalar& a) const { return Scalar(1) / a; }
};

template <typename Field>
using FieldMatrix = Eigen::Matrix<typename Field::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Field>
struct Echelon {
  FieldMatrix<Field> reduced;  // reduced row echelon form
  std::vector<Eigen::Index> pivots;
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination over any exact field.
template <typename Field>
Echelon<Field> rref(FieldMatrix<Field> m, const Field& f) {
  Echelon<Field> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && f.is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const auto inv = f.inv(m(r, c));
    for (Eigen::Index k = c; k < cols; ++k) m(r, k) = f.mul(m(r, k), inv);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (Eigen::Index k = c; k < cols; ++k) m(i, k) = f.sub(m(i, k), f.mul(factor, m(r, k)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Field>
Eigen::Index rank(const FieldMatrix<Field>& m, const Field& f) {
  if (m.size() == 0) return 0;
  return rref(m, f).rank();
}

/// Basis of the right null space, one vector per column.
template <typename Field>
FieldMatrix<Field> kernel(const FieldMatrix<Field>& m, const Field& f) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) {
    FieldMatrix<Field> id(cols, cols);
    for (Eigen::Index i = 0; i < cols; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) id(i, j) = i == j ? f.one() : f.zero();
    return id;
  }
  const auto e = rref(m, f);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  FieldMatrix<Field> basis(cols, cols - e.rank());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    for (Eigen::Index i = 0; i < cols; ++i) basis(i, k) = f.zero();
    basis(free, k) = f.one();
    for (Eigen::Index r = 0; r < e.rank(); ++r) basis(e.pivots[r], k) = f.neg(e.reduced(r, free));
    ++k;
  }
  return basis;
}

// --- subspace calculus over F_q; a subspace is a matrix whose columns form a basis ---

/// Canonical basis (columns) of the column space of m.
FpMatrix column_space(const FpMatrix& m, const PrimeField& f);
/// Matrix whose right null space is exactly span(columns of basis) inside F^ambient.
FpMatrix annihilator(const FpMatrix& basis, Eigen::Index ambient, const PrimeField& f);
/// {x : map * x lies in target}, with target given by a column basis.
FpMatrix preimage(const FpMatrix& map, const FpMatrix& target, const PrimeField& f);
/// True when span(sub) is contained in span(super).
bool contains(const FpMatrix& super, const FpMatrix& sub, const PrimeField& f);
FpMatrix hstack(const std::vector<FpMatrix>& blocks, Eigen::Index rows);
FpMatrix vstack(const std::vector<FpMatrix>& blocks, Eigen::Index cols);
FpMatrix identity(Eigen::Index n);
/// S with p * S = I for a full-row-rank p.
FpMatrix right_inverse(const FpMatrix& p, const PrimeField& f);
/// L with L * u = I for a full-column-rank u.
FpMatrix left_inverse(const FpMatrix& u, const PrimeField& f);

/// Every subspace of F_q^dim in canonical form (ordered by dimension, then by
/// reduced echelon encoding). Cached; the returned reference stays valid.
const std::vector<FpMatrix>& subspaces(int q, int dim);
/// Subspaces of F_q^dim of exactly the given dimension.
std::vector<FpMatrix> subspaces_of_dim(int q, int dim, int k);

/// |GL_d(F_q)| = prod_{k<d} (q^d - q^k).
BigInt gl_order(int q, int d);

}  // namespace p2flip
