#include "p2flip/repcore.hpp"

#include <sstream>

namespace p2flip {

std::string to_string(const DimVector& d) {
  std::ostringstream os;
  os << '(' << d.a_minus1 << ',' << d.a_0 << ',' << d.a_1 << ')';
  return os.str();
}

DimVector alpha(int r, int n) {
  if (n < 1) throw ParameterError("alpha(r,n) requires n >= 1");
  const DimVector d{n, 2 * n - 1 + r, n - 1};
  if (!d.is_nonnegative()) throw ParameterError("alpha(r,n) has a negative component: " + to_string(d));
  return d;
}

std::optional<std::pair<int, int>> as_alpha(const DimVector& d) {
  if (d.a_minus1 < 1 || d.a_1 != d.a_minus1 - 1 || d.a_0 < 0) return std::nullopt;
  const auto n = static_cast<int>(d.a_minus1);
  return std::make_pair(static_cast<int>(d.a_0) - 2 * n + 1, n);
}

ChernVector chern_of_class(const DimVector& b) {
  // halves: e_{-1} -> 1, e_0 -> 0, e_1 -> 1
  return {b.a_minus1 - b.a_0 + b.a_1, -b.a_minus1 + b.a_1, b.a_minus1 + b.a_1};
}

std::int64_t euler_form(const DimVector& b, const DimVector& g) {
  return b.a_minus1 * g.a_minus1 + b.a_0 * g.a_0 + b.a_1 * g.a_1 -
         3 * (b.a_minus1 * g.a_0 + b.a_0 * g.a_1) + 6 * b.a_minus1 * g.a_1;
}

BRep BRep::zero(int q, const DimVector& dims) {
  if (!dims.is_nonnegative()) throw ParameterError("representation dims must be nonnegative: " + to_string(dims));
  PrimeField{q};
  BRep e;
  e.q = q;
  e.dims = dims;
  for (int i = 0; i < 3; ++i) {
    e.C[i] = FpMatrix::Zero(dims.a_0, dims.a_minus1);
    e.D[i] = FpMatrix::Zero(dims.a_1, dims.a_0);
  }
  return e;
}

BRep BRep::simple(int q, int vertex) {
  switch (vertex) {
    case -1: return zero(q, kE_minus1);
    case 0: return zero(q, kE_0);
    case 1: return zero(q, kE_1);
    default: throw ParameterError("simple module vertex must be -1, 0 or 1");
  }
}

FpMatrix BRep::stacked_C() const { return hstack({C[0], C[1], C[2]}, dims.a_0); }

FpMatrix BRep::stacked_D() const { return vstack({D[0], D[1], D[2]}, dims.a_0); }

void validate_shapes(const BRep& e) {
  if (!e.dims.is_nonnegative()) throw ParameterError("representation dims must be nonnegative: " + to_string(e.dims));
  PrimeField{e.q};
  for (int i = 0; i < 3; ++i) {
    if (e.C[i].rows() != e.dims.a_0 || e.C[i].cols() != e.dims.a_minus1)
      throw ShapeError("C_" + std::to_string(i) + " has shape inconsistent with dims " + to_string(e.dims));
    if (e.D[i].rows() != e.dims.a_1 || e.D[i].cols() != e.dims.a_0)
      throw ShapeError("D_" + std::to_string(i) + " has shape inconsistent with dims " + to_string(e.dims));
  }
}

bool check_relations(const BRep& e) {
  validate_shapes(e);
  const PrimeField f(e.q);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      FpMatrix rel = e.D[j] * e.C[i];
      if (j != i) rel += e.D[i] * e.C[j];
      if (!f.reduce(rel).isZero()) return false;
    }
  }
  return true;
}

BRep direct_sum(const BRep& a, const BRep& b) {
  if (a.q != b.q) throw FieldMismatchError("direct_sum: modules over different fields");
  BRep s = BRep::zero(a.q, a.dims + b.dims);
  for (int i = 0; i < 3; ++i) {
    s.C[i].topLeftCorner(a.dims.a_0, a.dims.a_minus1) = a.C[i];
    s.C[i].bottomRightCorner(b.dims.a_0, b.dims.a_minus1) = b.C[i];
    s.D[i].topLeftCorner(a.dims.a_1, a.dims.a_0) = a.D[i];
    s.D[i].bottomRightCorner(b.dims.a_1, b.dims.a_0) = b.D[i];
  }
  return s;
}

HomDims hom_dims(const BRep& e) {
  validate_shapes(e);
  const PrimeField f(e.q);
  const int a0 = e.dim_0();
  return {a0 - static_cast<int>(rank<PrimeField>(e.stacked_D(), f)),
          a0 - static_cast<int>(rank<PrimeField>(e.stacked_C(), f))};
}

namespace {

// Column-major flattening of a block into a column of a differential matrix.
void put_block(FpMatrix& column_store, Eigen::Index col, Eigen::Index offset, const FpMatrix& block) {
  for (Eigen::Index c = 0; c < block.cols(); ++c)
    for (Eigen::Index r = 0; r < block.rows(); ++r)
      column_store(offset + c * block.rows() + r, col) = block(r, c);
}

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kPairs[k].first == i && kPairs[k].second == j) return k;
  return -1;
}

}  // namespace

HomExt hom_ext_complex(const BRep& m, const BRep& n) {
  if (m.q != n.q) throw FieldMismatchError("hom_ext_complex: modules over different fields");
  validate_shapes(m);
  validate_shapes(n);
  const PrimeField f(m.q);
  const Eigen::Index mm = m.dims.a_minus1, m0 = m.dims.a_0, m1 = m.dims.a_1;
  const Eigen::Index nm = n.dims.a_minus1, n0 = n.dims.a_0, n1 = n.dims.a_1;

  const Eigen::Index c0 = mm * nm + m0 * n0 + m1 * n1;
  const Eigen::Index xi_size = n0 * mm, eta_size = n1 * m0;  // Hom(M_{-1},N_0), Hom(M_0,N_1)
  const Eigen::Index c1 = 3 * xi_size + 3 * eta_size;
  const Eigen::Index rel_size = n1 * mm;
  const Eigen::Index c2 = 6 * rel_size;
  const auto xi_offset = [&](int i) { return i * xi_size; };
  const auto eta_offset = [&](int j) { return 3 * xi_size + j * eta_size; };

  // d0(f_{-1}, f_0, f_1) = (f_0 C_i^M - C_i^N f_{-1} ; f_1 D_j^M - D_j^N f_0)
  FpMatrix d0 = FpMatrix::Zero(c1, c0);
  Eigen::Index col = 0;
  for (Eigen::Index b = 0; b < mm; ++b)
    for (Eigen::Index a = 0; a < nm; ++a, ++col) {
      FpMatrix unit = FpMatrix::Zero(nm, mm);
      unit(a, b) = 1;
      for (int i = 0; i < 3; ++i) put_block(d0, col, xi_offset(i), f.reduce(-(n.C[i] * unit)));
    }
  for (Eigen::Index b = 0; b < m0; ++b)
    for (Eigen::Index a = 0; a < n0; ++a, ++col) {
      FpMatrix unit = FpMatrix::Zero(n0, m0);
      unit(a, b) = 1;
      for (int i = 0; i < 3; ++i) put_block(d0, col, xi_offset(i), f.mul(unit, m.C[i]));
      for (int j = 0; j < 3; ++j) put_block(d0, col, eta_offset(j), f.reduce(-(n.D[j] * unit)));
    }
  for (Eigen::Index b = 0; b < m1; ++b)
    for (Eigen::Index a = 0; a < n1; ++a, ++col) {
      FpMatrix unit = FpMatrix::Zero(n1, m1);
      unit(a, b) = 1;
      for (int j = 0; j < 3; ++j) put_block(d0, col, eta_offset(j), f.mul(unit, m.D[j]));
    }

  // d1: xi_i contributes D_j^N xi_i and eta_i contributes eta_i C_j^M to the pair {i,j}.
  FpMatrix d1 = FpMatrix::Zero(c2, c1);
  col = 0;
  for (int i = 0; i < 3; ++i)
    for (Eigen::Index b = 0; b < mm; ++b)
      for (Eigen::Index a = 0; a < n0; ++a, ++col) {
        FpMatrix unit = FpMatrix::Zero(n0, mm);
        unit(a, b) = 1;
        FpMatrix acc[6];
        for (auto& x : acc) x = FpMatrix::Zero(n1, mm);
        for (int j = 0; j < 3; ++j) acc[pair_index(i, j)] += n.D[j] * unit;
        for (int k = 0; k < 6; ++k) put_block(d1, col, k * rel_size, f.reduce(acc[k]));
      }
  for (int i = 0; i < 3; ++i)
    for (Eigen::Index b = 0; b < m0; ++b)
      for (Eigen::Index a = 0; a < n1; ++a, ++col) {
        FpMatrix unit = FpMatrix::Zero(n1, m0);
        unit(a, b) = 1;
        FpMatrix acc[6];
        for (auto& x : acc) x = FpMatrix::Zero(n1, mm);
        for (int j = 0; j < 3; ++j) acc[pair_index(i, j)] += unit * m.C[j];
        for (int k = 0; k < 6; ++k) put_block(d1, col, k * rel_size, f.reduce(acc[k]));
      }

  const auto r0 = static_cast<int>(rank<PrimeField>(d0, f));
  const auto r1 = static_cast<int>(rank<PrimeField>(d1, f));
  return {static_cast<int>(c0) - r0, static_cast<int>(c1) - r1 - r0, static_cast<int>(c2) - r1};
}

namespace {

void check_guard(const BRep& e, const EnumerationGuard& guard) {
  if (e.dims.total() > guard.max_total_dim || e.q > guard.max_field) {
    BigInt estimate = 0;
    for (int v : {e.dim_minus1(), e.dim_0(), e.dim_1()}) estimate += boost::multiprecision::pow(BigInt(e.q), v * v);
    throw ResourceError("submodule enumeration guard exceeded for dims " + to_string(e.dims) + " over F_" +
                            std::to_string(e.q),
                        estimate);
  }
}

// Extends the columns of lo to a basis of hi; returns only the added columns.
FpMatrix complement_in(const FpMatrix& lo, const FpMatrix& hi, const PrimeField& f) {
  FpMatrix basis = lo;
  std::vector<FpMatrix> added;
  Eigen::Index current = lo.cols();
  for (Eigen::Index c = 0; c < hi.cols(); ++c) {
    FpMatrix trial(hi.rows(), basis.cols() + 1);
    trial << basis, hi.col(c);
    if (rank<PrimeField>(trial, f) > current) {
      basis = trial;
      ++current;
      added.push_back(hi.col(c));
    }
  }
  return hstack(added, hi.rows());
}

}  // namespace

void for_each_submodule(const BRep& e, const std::function<void(const Submodule&)>& visit,
                        const EnumerationGuard& guard) {
  validate_shapes(e);
  check_guard(e, guard);
  const PrimeField f(e.q);
  const int am = e.dim_minus1(), a0 = e.dim_0(), a1 = e.dim_1();
  for (const auto& um : subspaces(e.q, am)) {
    const FpMatrix lo = column_space(hstack({f.mul(e.C[0], um), f.mul(e.C[1], um), f.mul(e.C[2], um)}, a0), f);
    for (const auto& u1 : subspaces(e.q, a1)) {
      FpMatrix hi = identity(a0);
      for (int j = 0; j < 3; ++j) hi = f.mul(hi, preimage(f.mul(e.D[j], hi), u1, f));
      if (!contains(hi, lo, f)) continue;
      const FpMatrix extra = complement_in(lo, hi, f);
      for (const auto& x : subspaces(e.q, static_cast<int>(extra.cols()))) {
        const FpMatrix u0 = column_space(hstack({lo, f.mul(extra, x)}, a0), f);
        const DimVector dims{um.cols(), u0.cols(), u1.cols()};
        if (dims.is_zero() || dims == e.dims) continue;
        visit(Submodule{dims, {um, u0, u1}});
      }
    }
  }
}

void for_each_submodule_frame(const BRep& e, const std::function<void(const SubmoduleFrame&)>& visit,
                              const EnumerationGuard& guard) {
  validate_shapes(e);
  check_guard(e, guard);
  const PrimeField f(e.q);
  const int am = e.dim_minus1(), a0 = e.dim_0(), a1 = e.dim_1();
  const auto& spaces_m = subspaces(e.q, am);
  const auto& spaces_1 = subspaces(e.q, a1);

  std::vector<int> lo(spaces_m.size());
  for (std::size_t k = 0; k < spaces_m.size(); ++k) {
    const FpMatrix& um = spaces_m[k];
    lo[k] = static_cast<int>(rank<PrimeField>(hstack({f.mul(e.C[0], um), f.mul(e.C[1], um), f.mul(e.C[2], um)}, a0), f));
  }
  // U_{-1} and U_1 fit together iff every D_j C_i maps U_{-1} into U_1, i.e. ann(U_1) D_j C_i U_{-1} = 0.
  std::array<FpMatrix, 9> dc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dc[3 * i + j] = f.mul(e.D[j], e.C[i]);
  for (const auto& u1 : spaces_1) {
    const FpMatrix ann = annihilator(u1, a1, f);
    const int hi = a0 - static_cast<int>(rank<PrimeField>(
                            vstack({f.mul(ann, e.D[0]), f.mul(ann, e.D[1]), f.mul(ann, e.D[2])}, a0), f));
    std::array<FpMatrix, 9> test;
    for (int k = 0; k < 9; ++k) test[k] = f.mul(ann, dc[k]);
    for (std::size_t k = 0; k < spaces_m.size(); ++k) {
      bool closed = true;
      for (int t = 0; t < 9 && closed; ++t) closed = f.mul(test[t], spaces_m[k]).isZero();
      if (!closed) continue;
      visit(SubmoduleFrame{static_cast<int>(spaces_m[k].cols()), lo[k], hi, static_cast<int>(u1.cols())});
    }
  }
}

FpMatrix relation_row_space(int q, const std::array<FpMatrix, 3>& C, Eigen::Index a0) {
  const PrimeField f(q);
  const Eigen::Index am = C[0].cols();
  // (x_0 | x_1 | x_2) * M = 0 with one column block per pair (i, j), i <= j.
  FpMatrix m = FpMatrix::Zero(3 * a0, 6 * am);
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    m.block(j * a0, k * am, a0, am) += C[i];
    if (i != j) m.block(i * a0, k * am, a0, am) += C[j];
  }
  return kernel<PrimeField>(f.reduce(m.transpose()), f);
}

std::vector<Submodule> submodules(const BRep& e, const EnumerationGuard& guard) {
  std::vector<Submodule> out;
  for_each_submodule(e, [&](const Submodule& s) { out.push_back(s); }, guard);
  return out;
}

BRep restrict_to(const BRep& e, const std::array<FpMatrix, 3>& basis) {
  const PrimeField f(e.q);
  const DimVector dims{basis[0].cols(), basis[1].cols(), basis[2].cols()};
  BRep s = BRep::zero(e.q, dims);
  const FpMatrix l0 = left_inverse(basis[1], f);
  const FpMatrix l1 = left_inverse(basis[2], f);
  for (int i = 0; i < 3; ++i) {
    const FpMatrix image_c = f.mul(e.C[i], basis[0]);
    const FpMatrix image_d = f.mul(e.D[i], basis[1]);
    s.C[i] = f.mul(l0, image_c);
    s.D[i] = f.mul(l1, image_d);
    if (f.mul(basis[1], s.C[i]) != image_c || f.mul(basis[2], s.D[i]) != image_d)
      throw ParameterError("restrict_to: subspaces are not closed under the module maps");
  }
  return s;
}

BRep quotient_at_v0(const BRep& e, const FpMatrix& cols) {
  const PrimeField f(e.q);
  const FpMatrix w = column_space(cols, f);
  if (!f.mul(e.stacked_D(), w).isZero())
    throw ParameterError("quotient_at_v0: subspace is not killed by every D_j");
  const FpMatrix proj = annihilator(w, e.dims.a_0, f);  // (a0-k) x a0, kernel = w
  const FpMatrix section = right_inverse(proj, f);
  BRep out = BRep::zero(e.q, {e.dims.a_minus1, proj.rows(), e.dims.a_1});
  for (int i = 0; i < 3; ++i) {
    out.C[i] = f.mul(proj, e.C[i]);
    out.D[i] = f.mul(e.D[i], section);
  }
  return out;
}

nlohmann::ordered_json matrix_to_json(const FpMatrix& m) {
  auto flat = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  return flat;
}

FpMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols, int q) {
  const PrimeField f(q);
  std::vector<long long> flat;
  if (!j.is_array()) throw ParameterError("matrix must be a JSON array");
  for (const auto& entry : j) {
    if (entry.is_array()) {
      for (const auto& x : entry) flat.push_back(x.get<long long>());
    } else {
      flat.push_back(entry.get<long long>());
    }
  }
  if (static_cast<Eigen::Index>(flat.size()) != rows * cols)
    throw ShapeError("matrix has " + std::to_string(flat.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  FpMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = f.reduce(flat[r * cols + c]);
  return m;
}

nlohmann::ordered_json to_json(const BRep& e) {
  nlohmann::ordered_json j;
  j["q"] = e.q;
  j["dims"] = {e.dims.a_minus1, e.dims.a_0, e.dims.a_1};
  auto c = nlohmann::ordered_json::array(), d = nlohmann::ordered_json::array();
  for (int i = 0; i < 3; ++i) {
    c.push_back(matrix_to_json(e.C[i]));
    d.push_back(matrix_to_json(e.D[i]));
  }
  j["C"] = std::move(c);
  j["D"] = std::move(d);
  return j;
}

BRep brep_from_json(const nlohmann::json& j) {
  try {
    const int q = j.at("q").get<int>();
    const auto& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 3) throw ShapeError("\"dims\" must have three entries");
    BRep e = BRep::zero(q, {dims[0].get<std::int64_t>(), dims[1].get<std::int64_t>(), dims[2].get<std::int64_t>()});
    const auto& c = j.at("C");
    const auto& d = j.at("D");
    if (c.size() != 3 || d.size() != 3) throw ShapeError("\"C\" and \"D\" must each hold three matrices");
    for (int i = 0; i < 3; ++i) {
      e.C[i] = matrix_from_json(c[i], e.dims.a_0, e.dims.a_minus1, q);
      e.D[i] = matrix_from_json(d[i], e.dims.a_1, e.dims.a_0, q);
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParameterError(std::string("malformed representation JSON: ") + ex.what());
  }
}

}  // namespace p2flip
