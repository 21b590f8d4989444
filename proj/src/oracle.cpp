#include "p2flip/oracle.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "p2flip/hodgepoly.hpp"

namespace p2flip {

BigInt parse_guard(const std::string& text) {
  try {
    const auto caret = text.find('^');
    if (caret == std::string::npos) {
      BigInt v(text);
      if (v <= 0) throw ParameterError("guard must be positive");
      return v;
    }
    const BigInt base(text.substr(0, caret));
    const int exponent = std::stoi(text.substr(caret + 1));
    if (base <= 0 || exponent < 0 || exponent > 4096) throw ParameterError("guard out of range: " + text);
    return boost::multiprecision::pow(base, exponent);
  } catch (const ParameterError&) {
    throw;
  } catch (const std::exception&) {
    throw ParameterError("cannot parse guard '" + text + "'");
  }
}

namespace {

BigInt gauge_order_of(const DimVector& a, int q) {
  return gl_order(q, static_cast<int>(a.a_minus1)) * gl_order(q, static_cast<int>(a.a_0)) *
         gl_order(q, static_cast<int>(a.a_1));
}

void check_class(const DimVector& alpha, int q) {
  PrimeField{q};
  if (!alpha.is_nonnegative()) throw ParameterError("class must be nonnegative: " + to_string(alpha));
  if (!as_alpha(alpha)) throw ParameterError(to_string(alpha) + " is not of the form (n, 2n-1+r, n-1)");
}

// Writes the base-q digits of index into the entries of C_0, C_1, C_2 (column-major).
void decode(std::uint64_t index, int q, std::array<FpMatrix, 3>& c) {
  for (auto& m : c)
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      m.data()[k] = static_cast<int>(index % q);
      index /= q;
    }
}

struct Tally {
  BigInt stable = 0;
  BigInt visited = 0;
  std::map<int, BigInt> buckets;
};

// Visits every relation-satisfying module whose C-tuple index lies in [begin, end).
// visit returns false to stop early.
template <typename Visit>
void sweep(const DimVector& alpha, int q, Side side, std::uint64_t begin, std::uint64_t end, Tally& tally,
           Visit&& visit) {
  const PrimeField f(q);
  BRep e = BRep::zero(q, alpha);
  const Eigen::Index a0 = alpha.a_0, a1 = alpha.a_1;
  for (std::uint64_t index = begin; index < end; ++index) {
    decode(index, q, e.C);
    ++tally.visited;
    if (side == Side::minus || side == Side::zero_stable)
      if (rank<PrimeField>(e.stacked_C(), f) < a0) continue;
    const FpMatrix k = relation_row_space(q, e.C, a0);
    const Eigen::Index dim_k = k.cols();
    const Eigen::Index digits = dim_k * a1;
    std::vector<int> coeff(digits, 0);
    while (true) {
      for (Eigen::Index t = 0; t < a1; ++t) {
        FpMatrix row = FpMatrix::Zero(3 * a0, 1);
        for (Eigen::Index c = 0; c < dim_k; ++c)
          if (coeff[t * dim_k + c] != 0) row += coeff[t * dim_k + c] * k.col(c);
        row = f.reduce(row);
        for (int j = 0; j < 3; ++j) e.D[j].row(t) = row.middleRows(j * a0, a0).transpose();
      }
      ++tally.visited;
      if (!visit(e)) return;
      Eigen::Index pos = 0;
      while (pos < digits && ++coeff[pos] == q) coeff[pos++] = 0;
      if (pos == digits) break;
    }
  }
}

std::uint64_t c_state_count(const DimVector& alpha, int q, const CountOptions& options) {
  const std::int64_t entries = 3 * alpha.a_minus1 * alpha.a_0;
  const BigInt states = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(entries));
  if (states > options.guard || states > BigInt(std::numeric_limits<std::uint64_t>::max() / 2))
    throw ResourceError("enumeration of " + states.str() + " C-tuples for class " + to_string(alpha) + " over F_" +
                            std::to_string(q) + " exceeds the guard " + options.guard.str(),
                        states);
  return static_cast<std::uint64_t>(states);
}

int bn_of(const BRep& e, Side side) {
  const HomDims h = hom_dims(e);
  return side == Side::plus ? h.h_to_s0 : h.h_from_s0;
}

StratifiedCount run_count(const DimVector& alpha, Side side, int q, const CountOptions& options, bool stratify) {
  check_class(alpha, q);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t total = c_state_count(alpha, q, options);
  const int jobs = std::max(1, options.jobs);
  std::vector<Tally> tallies(jobs);
  const auto work = [&](int w) {
    const std::uint64_t begin = total * w / jobs, end = total * (w + 1) / jobs;
    sweep(alpha, q, side, begin, end, tallies[w], [&](const BRep& e) {
      if (stability_criterion(e, side)) {
        ++tallies[w].stable;
        if (stratify) ++tallies[w].buckets[bn_of(e, side)];
      }
      return true;
    });
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }

  StratifiedCount out;
  CountReport& rep = out.total;
  rep.alpha = alpha;
  rep.q = q;
  rep.side = side;
  for (const auto& t : tallies) {
    rep.stable_reps += t.stable;
    rep.states_visited += t.visited;
    for (const auto& [i, c] : t.buckets) out.stable_reps[i] += c;
  }
  rep.gauge_order = gauge_order_of(alpha, q);
  const Rational scale = Rational(q - 1) / Rational(rep.gauge_order);
  rep.point_count = Rational(rep.stable_reps) * scale;
  for (const auto& [i, c] : out.stable_reps) out.point_count[i] = Rational(c) * scale;
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return out;
}

}  // namespace

CountReport count_stable(const DimVector& alpha, Side side, int q, const CountOptions& options) {
  return run_count(alpha, side, q, options, false).total;
}

StratifiedCount stratified_count(const DimVector& alpha, Side side, int q, const CountOptions& options) {
  if (side != Side::minus && side != Side::plus)
    throw ParameterError("stratified_count is defined for the minus and plus sides");
  return run_count(alpha, side, q, options, true);
}

std::optional<BRep> find_stable(const DimVector& alpha, Side side, int q, const CountOptions& options) {
  check_class(alpha, q);
  const std::uint64_t total = c_state_count(alpha, q, options);
  Tally tally;
  std::optional<BRep> hit;
  sweep(alpha, q, side, 0, total, tally, [&](const BRep& e) {
    if (!stability_criterion(e, side)) return true;
    hit = e;
    return false;
  });
  return hit;
}

namespace {

// Calls visit(G) for every theta_0 stable Kronecker tuple of size n over F_q.
void for_each_stable_kronecker(int n, int q, const CountOptions& options,
                               const std::function<void(const KroneckerRep&)>& visit) {
  KroneckerRep g = KroneckerRep::zero(q, n);
  const std::int64_t entries = 3 * static_cast<std::int64_t>(n) * (n - 1);
  const BigInt states = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(entries));
  if (states > options.guard)
    throw ResourceError("enumeration of " + states.str() + " Kronecker tuples exceeds the guard", states);
  const auto total = static_cast<std::uint64_t>(states);
  const KroneckerGuard unlimited{std::numeric_limits<int>::max(), kMaxPrime};
  for (std::uint64_t index = 0; index < total; ++index) {
    decode(index, q, g.A);
    if (kronecker_theta0_stable(g, unlimited)) visit(g);
  }
}

void check_lift_args(int r, int n, int q, Side side) {
  PrimeField{q};
  if (n < 1 || r < 0) throw ParameterError("lift enumeration needs n >= 1 and r >= 0");
  if (side != Side::minus && side != Side::plus) throw ParameterError("lift enumeration supports minus and plus");
}

}  // namespace

void for_each_lifted_stable(int r, int n, int q, Side side, const std::function<void(const BRep&)>& visit,
                            const CountOptions& options) {
  check_lift_args(r, n, q, side);
  const PrimeField f(q);
  for_each_stable_kronecker(n, q, options, [&](const KroneckerRep& g) {
    if (side == Side::minus) {
      const BRep m = kron_to_minus(g);
      const FpMatrix k = kernel<PrimeField>(m.stacked_D(), f);
      if (k.cols() < n + 1 - r) return;
      for (const auto& v : subspaces_of_dim(q, static_cast<int>(k.cols()), n + 1 - r))
        visit(quotient_at_v0(m, f.mul(k, v)));
    } else {
      if (n - 2 - r < 0) return;
      const BRep p = kron_to_plus(g);
      const FpMatrix image = column_space(p.stacked_C(), f);
      const auto target = 2 * n - 1 + r;
      if (image.cols() > target) return;
      // W = image + complement part; the quotient F^{3n-3}/image is parametrised by an annihilator.
      const FpMatrix proj = annihilator(image, p.dim_0(), f);  // rows cut out the image
      const FpMatrix section = right_inverse(proj, f);
      for (const auto& x : subspaces_of_dim(q, static_cast<int>(proj.rows()), target - static_cast<int>(image.cols()))) {
        const FpMatrix w = column_space(hstack({image, f.mul(section, x)}, p.dim_0()), f);
        visit(restrict_to(p, {identity(n), w, identity(n - 1)}));
      }
    }
  });
}

Rational lifted_point_count(int r, int n, int q, Side side, const CountOptions& options) {
  check_lift_args(r, n, q, side);
  const PrimeField f(q);
  BigInt weighted = 0;
  for_each_stable_kronecker(n, q, options, [&](const KroneckerRep& g) {
    if (side == Side::minus) {
      const auto k = kernel<PrimeField>(kron_to_minus(g).stacked_D(), f).cols();
      weighted += gaussian_binomial(static_cast<int>(k), n + 1 - r).evaluate(q);
    } else {
      const auto image = rank<PrimeField>(kron_to_plus(g).stacked_C(), f);
      weighted += gaussian_binomial(3 * n - 3 - static_cast<int>(image), n - 2 - r).evaluate(q);
    }
  });
  const BigInt gauge = gl_order(q, n) * gl_order(q, n - 1);
  return Rational(weighted) * Rational(q - 1) / Rational(gauge);
}

BRep random_representation(int q, const DimVector& dims, std::mt19937_64& rng) {
  const PrimeField f(q);
  std::uniform_int_distribution<int> digit(0, q - 1);
  BRep e = BRep::zero(q, dims);
  for (auto& c : e.C)
    for (Eigen::Index k = 0; k < c.size(); ++k) c.data()[k] = digit(rng);
  const FpMatrix k = relation_row_space(q, e.C, dims.a_0);
  for (Eigen::Index t = 0; t < dims.a_1; ++t) {
    FpMatrix coeff(k.cols(), 1);
    for (Eigen::Index c = 0; c < coeff.rows(); ++c) coeff(c, 0) = digit(rng);
    const FpMatrix row = f.mul(k, coeff);
    for (int j = 0; j < 3; ++j) e.D[j].row(t) = row.middleRows(j * dims.a_0, dims.a_0).transpose();
  }
  return e;
}

KroneckerRep random_kronecker(int q, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, q - 1);
  KroneckerRep g = KroneckerRep::zero(q, n);
  for (auto& a : g.A)
    for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = digit(rng);
  return g;
}

nlohmann::ordered_json to_json(const CountReport& report, bool include_elapsed) {
  nlohmann::ordered_json j;
  j["alpha"] = {report.alpha.a_minus1, report.alpha.a_0, report.alpha.a_1};
  j["q"] = report.q;
  j["side"] = to_string(report.side);
  j["stable_reps"] = report.stable_reps.str();
  j["gauge_order"] = report.gauge_order.str();
  j["point_count"] = to_string(report.point_count);
  j["states_visited"] = report.states_visited.str();
  if (include_elapsed) j["elapsed_seconds"] = report.elapsed.count();
  return j;
}

}  // namespace p2flip
