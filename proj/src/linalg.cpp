#include "p2flip/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace p2flip {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int q) : q_(q) {
  if (!is_prime(q) || q > kMaxPrime)
    throw ParameterError("field size must be a prime <= " + std::to_string(kMaxPrime) + ", got " +
                         std::to_string(q));
  inverse_.assign(q, 0);
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (a * b % q == 1) inverse_[a] = b;
}

int PrimeField::inv(int a) const {
  if (a == 0) throw ParameterError("division by zero in F_q");
  return inverse_[a];
}

FpMatrix column_space(const FpMatrix& m, const PrimeField& f) {
  if (m.cols() == 0) return FpMatrix(m.rows(), 0);
  const auto e = rref<PrimeField>(m.transpose(), f);
  return e.reduced.topRows(e.rank()).transpose();
}

FpMatrix annihilator(const FpMatrix& basis, Eigen::Index ambient, const PrimeField& f) {
  if (basis.cols() == 0) return identity(ambient);
  // Rows y with y * basis = 0, i.e. kernel of basis^T.
  return kernel<PrimeField>(basis.transpose(), f).transpose();
}

FpMatrix preimage(const FpMatrix& map, const FpMatrix& target, const PrimeField& f) {
  const FpMatrix ann = annihilator(target, map.rows(), f);
  if (ann.rows() == 0) return identity(map.cols());
  return kernel<PrimeField>(f.mul(ann, map), f);
}

bool contains(const FpMatrix& super, const FpMatrix& sub, const PrimeField& f) {
  if (sub.cols() == 0) return true;
  const auto base = rank<PrimeField>(super, f);
  FpMatrix both(super.rows(), super.cols() + sub.cols());
  both << super, sub;
  return rank<PrimeField>(both, f) == base;
}

FpMatrix hstack(const std::vector<FpMatrix>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  FpMatrix out(rows, cols);
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw ShapeError("hstack: row count mismatch");
    out.middleCols(c, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

FpMatrix vstack(const std::vector<FpMatrix>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  FpMatrix out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw ShapeError("vstack: column count mismatch");
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

FpMatrix identity(Eigen::Index n) { return FpMatrix::Identity(n, n); }

FpMatrix right_inverse(const FpMatrix& p, const PrimeField& f) {
  const Eigen::Index m = p.rows(), n = p.cols();
  FpMatrix augmented(m, n + m);
  augmented << p, identity(m);
  const auto e = rref<PrimeField>(augmented, f);
  if (e.rank() != m || (m > 0 && e.pivots.back() >= n))
    throw ParameterError("right_inverse: matrix does not have full row rank");
  // rref(p) = R p has unit pivot columns, so selecting pivot rows inverts it.
  FpMatrix select = FpMatrix::Zero(n, m);
  for (Eigen::Index t = 0; t < m; ++t) select(e.pivots[t], t) = 1;
  return f.mul(select, e.reduced.rightCols(m));
}

FpMatrix left_inverse(const FpMatrix& u, const PrimeField& f) {
  return right_inverse(u.transpose(), f).transpose();
}

namespace {

void append_subspaces_of_dim(int q, int dim, int k, std::vector<FpMatrix>& out) {
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;
  if (k > dim) return;
  while (true) {
    // Free entries sit right of each pivot in non-pivot columns.
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_pivot(dim, false);
    for (int p : pivots) is_pivot[p] = true;
    for (int r = 0; r < k; ++r)
      for (int c = pivots[r] + 1; c < dim; ++c)
        if (!is_pivot[c]) free.emplace_back(r, c);
    std::vector<int> digits(free.size(), 0);
    while (true) {
      FpMatrix echelon = FpMatrix::Zero(k, dim);
      for (int r = 0; r < k; ++r) echelon(r, pivots[r]) = 1;
      for (std::size_t t = 0; t < free.size(); ++t) echelon(free[t].first, free[t].second) = digits[t];
      out.push_back(echelon.transpose());
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // next combination of pivot columns
    int i = k - 1;
    while (i >= 0 && pivots[i] == dim - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

}  // namespace

std::vector<FpMatrix> subspaces_of_dim(int q, int dim, int k) {
  std::vector<FpMatrix> out;
  if (k < 0 || k > dim) return out;
  append_subspaces_of_dim(q, dim, k, out);
  return out;
}

const std::vector<FpMatrix>& subspaces(int q, int dim) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<FpMatrix>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{q, dim}];
  if (!slot) {
    slot = std::make_unique<std::vector<FpMatrix>>();
    for (int k = 0; k <= dim; ++k) append_subspaces_of_dim(q, dim, k, *slot);
  }
  return *slot;
}

BigInt gl_order(int q, int d) {
  BigInt qd = boost::multiprecision::pow(BigInt(q), d);
  BigInt result = 1, qk = 1;
  for (int k = 0; k < d; ++k) {
    result *= qd - qk;
    qk *= q;
  }
  return result;
}

}  // namespace p2flip
