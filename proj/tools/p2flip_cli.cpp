#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "p2flip/acceptance.hpp"
#include "p2flip/bridgeland.hpp"
#include "p2flip/hodgepoly.hpp"
#include "p2flip/oracle.hpp"
#include "p2flip/stability.hpp"
#include "p2flip/wallcross.hpp"

using namespace p2flip;
using json = nlohmann::ordered_json;

namespace {

struct Table {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

// JSON payload plus the tables shown in the human formats.
struct Report {
  json payload;
  std::vector<Table> tables;
  bool ok = true;
};

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Report& report, const std::string& format, std::ostream& os) {
  if (format == "json") {
    os << report.payload.dump(2) << "\n";
    return;
  }
  bool first = true;
  for (const auto& t : report.tables) {
    if (!first) os << "\n";
    first = false;
    if (format == "md") {
      os << "### " << t.title << "\n\n|";
      for (const auto& h : t.headers) os << " " << h << " |";
      os << "\n|";
      for (std::size_t k = 0; k < t.headers.size(); ++k) os << "---|";
      os << "\n";
      for (const auto& row : t.rows) {
        os << "|";
        for (const auto& cell : row) os << " " << cell << " |";
        os << "\n";
      }
    } else {
      os << "# " << t.title << "\n";
      for (std::size_t k = 0; k < t.headers.size(); ++k) os << (k ? "," : "") << csv_cell(t.headers[k]);
      os << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
        os << "\n";
      }
    }
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string poly_t(const HodgePoly& p) { return p.to_t_string(); }

std::string vec_string(const RVec3& v) {
  std::ostringstream os;
  os << "(" << to_string(v(0)) << ", " << to_string(v(1)) << ", " << to_string(v(2)) << ")";
  return os.str();
}

HodgeData load_data(const std::vector<std::string>& paths) {
  if (paths.empty()) return HodgeData::from_environment();
  HodgeData data;
  for (const auto& p : paths) {
    if (std::filesystem::is_directory(p))
      data.load_directory(p);
    else
      data.load_file(p);
  }
  return data;
}

Table hypotheses_table(const Hypotheses& h) {
  return {"hypotheses",
          {"condition", "holds"},
          {{"n >= r-1", yes_no(h.n_ge_r_minus_1)}, {"n >= r", yes_no(h.n_ge_r)}, {"n >= r+2", yes_no(h.n_ge_r_plus_2)}}};
}

json result_json(const std::string& side, const HodgeResult& res) {
  json j;
  j["side"] = side;
  j["poly"] = to_json(res.poly);
  j["empty"] = res.empty;
  j["provenance"] = res.provenance;
  return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

Report cmd_hodge(int r, int n, const std::string& side, const HodgeData& data) {
  Report rep;
  rep.payload["command"] = "hodge";
  rep.payload["r"] = r;
  rep.payload["n"] = n;
  rep.payload["hypotheses"] = to_json(hypotheses(r, n));
  Table t{"virtual Hodge polynomials (in t)", {"side", "e", "empty", "provenance"}, {}};
  auto results = json::array();
  const auto add = [&](const std::string& name, const HodgeResult& res) {
    results.push_back(result_json(name, res));
    t.rows.push_back({name, poly_t(res.poly), yes_no(res.empty), join(res.provenance, "; ")});
  };
  if (side == "minus" || side == "all") add("minus", e_minus(r, n, data));
  if (side == "zero" || side == "all") add("zero", e_zero(r, n, data));
  if (side == "plus" || side == "all") add("plus", e_plus(r, n, data));
  rep.payload["results"] = std::move(results);
  rep.tables.push_back(std::move(t));
  rep.tables.push_back(hypotheses_table(hypotheses(r, n)));
  return rep;
}

Report cmd_strata(int r, int n, const HodgeData& data) {
  Report rep;
  const StrataTable table = strata_table(r, n, data);
  rep.payload["command"] = "strata";
  const nlohmann::json tj = to_json(table);
  for (const auto& [k, v] : tj.items()) rep.payload[k] = v;
  Table t{"strata for r=" + std::to_string(r) + ", n=" + std::to_string(n),
          {"i", "fiber minus", "fiber plus", "e(M0(alpha_{r-i}))"},
          {}};
  for (const auto& row : table.rows)
    t.rows.push_back({std::to_string(row.i),
                      "Gr(" + std::to_string(row.fiber_minus.first) + "," + std::to_string(row.fiber_minus.second) + ")",
                      "Gr(" + std::to_string(row.fiber_plus.first) + "," + std::to_string(row.fiber_plus.second) + ")",
                      poly_t(row.m0_poly)});
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_flip(int r, int n, const HodgeData& data) {
  Report rep;
  const HodgeResult minus = e_minus(r, n, data), plus = e_plus(r, n, data), diff = flip_difference(r, n, data);
  const HodgePoly direct = minus.poly - plus.poly;
  rep.ok = direct == diff.poly;
  rep.payload["command"] = "flip";
  rep.payload["r"] = r;
  rep.payload["n"] = n;
  rep.payload["hypotheses"] = to_json(hypotheses(r, n));
  rep.payload["minus"] = result_json("minus", minus);
  rep.payload["plus"] = result_json("plus", plus);
  rep.payload["difference"] = to_json(direct);
  rep.payload["flip_difference"] = to_json(diff.poly);
  rep.payload["identity_holds"] = rep.ok;
  rep.tables.push_back({"flip for r=" + std::to_string(r) + ", n=" + std::to_string(n),
                        {"quantity", "value (in t)"},
                        {{"e(M_-)", poly_t(minus.poly)},
                         {"e(M_+)", poly_t(plus.poly)},
                         {"e(M_-) - e(M_+)", poly_t(direct)},
                         {"strata difference", poly_t(diff.poly)},
                         {"identity holds", yes_no(rep.ok)}}});
  rep.tables.push_back(hypotheses_table(hypotheses(r, n)));
  return rep;
}

Report cmd_walls(int r, int n) {
  Report rep;
  const DimVector a = alpha(r, n);
  const auto walls = candidate_walls(a);
  const NamedThetas named = named_thetas(r, n);
  const RVec3 canonical = -3 * named.thetaP2.level0;
  rep.payload["command"] = "walls";
  rep.payload["alpha"] = {a.a_minus1, a.a_0, a.a_1};
  rep.payload["theta0"] = to_json(named.theta0.level0);
  rep.payload["thetaP2"] = to_json(named.thetaP2.level0);
  rep.payload["canonical_ray"] = to_json(canonical);
  auto list = json::array();
  Table t{"candidate walls for " + to_string(a), {"ray", "witness", "witnesses", "through theta0", "through thetaP2"}, {}};
  for (const auto& w : walls) {
    json j;
    j["ray"] = to_json(w.ray);
    j["witness_class"] = {w.witness_class.a_minus1, w.witness_class.a_0, w.witness_class.a_1};
    auto ws = json::array();
    for (const auto& b : w.witnesses) ws.push_back({b.a_minus1, b.a_0, b.a_1});
    j["witnesses"] = std::move(ws);
    j["through_theta0"] = w.through_theta0;
    j["through_thetaP2"] = w.through_thetaP2;
    list.push_back(std::move(j));
    t.rows.push_back({vec_string(w.ray), to_string(w.witness_class), std::to_string(w.witnesses.size()),
                      yes_no(w.through_theta0), yes_no(w.through_thetaP2)});
  }
  rep.payload["walls"] = std::move(list);
  rep.tables.push_back(std::move(t));
  rep.tables.push_back({"metadata",
                        {"field", "value"},
                        {{"theta0", vec_string(named.theta0.level0)},
                         {"thetaP2", vec_string(named.thetaP2.level0)},
                         {"canonical ray (-3 thetaP2)", vec_string(canonical)}}});
  return rep;
}

Table count_table(const CountReport& c, bool timing) {
  Table t{"point count", {"field", "value"}, {}};
  t.rows = {{"alpha", to_string(c.alpha)},
            {"q", std::to_string(c.q)},
            {"side", to_string(c.side)},
            {"stable_reps", c.stable_reps.str()},
            {"gauge_order", c.gauge_order.str()},
            {"point_count", to_string(c.point_count)},
            {"states_visited", c.states_visited.str()}};
  if (timing) t.rows.push_back({"elapsed_seconds", std::to_string(c.elapsed.count())});
  return t;
}

Report cmd_count(const DimVector& a, int q, Side side, bool stratified, const CountOptions& options, bool timing) {
  Report rep;
  rep.payload["command"] = "count";
  if (!stratified) {
    const CountReport c = count_stable(a, side, q, options);
    rep.payload["report"] = to_json(c, timing);
    rep.tables.push_back(count_table(c, timing));
    return rep;
  }
  const StratifiedCount sc = stratified_count(a, side, q, options);
  rep.payload["report"] = to_json(sc.total, timing);
  auto strata = json::array();
  Table t{"strata by Brill-Noether index", {"i", "stable_reps", "point_count"}, {}};
  for (const auto& [i, reps] : sc.stable_reps) {
    const Rational pc = sc.point_count.at(i);
    strata.push_back({{"i", i}, {"stable_reps", reps.str()}, {"point_count", to_string(pc)}});
    t.rows.push_back({std::to_string(i), reps.str(), to_string(pc)});
  }
  rep.payload["strata"] = std::move(strata);
  rep.tables.push_back(count_table(sc.total, timing));
  rep.tables.push_back(std::move(t));
  return rep;
}

Report cmd_bridgeland(const Rational& s, int n) {
  Report rep;
  const Rational s0 = wall_parameter(n);
  const CentralCharge ze = z_exceptional(s), zg = z_geometric_normalized(s);
  const GL2Match m = gl2_match(s);
  const RVec3 ke = kernel_line(ze), kg = kernel_line(zg);
  const Theta t = tilde_theta(s, n), t0 = tilde_theta(s0, n);
  rep.ok = m.det_positive && ke == kg;
  rep.payload["command"] = "bridgeland";
  rep.payload["s"] = to_string(s);
  rep.payload["n"] = n;
  rep.payload["s0"] = to_string(s0);
  rep.payload["z_exceptional"] = to_json(ze);
  rep.payload["z_geometric"] = to_json(zg);
  rep.payload["gl2"] = {{to_string(m.g(0, 0)), to_string(m.g(0, 1))}, {to_string(m.g(1, 0)), to_string(m.g(1, 1))}};
  rep.payload["det"] = to_string(m.det);
  rep.payload["det_positive"] = m.det_positive;
  rep.payload["kernel_exceptional"] = to_json(ke);
  rep.payload["kernel_geometric"] = to_json(kg);
  rep.payload["tilde_theta"] = to_json(t.level0);
  rep.payload["tilde_theta_at_s0"] = to_json(t0.level0);
  rep.tables.push_back({"Bridgeland charges at s=" + to_string(s),
                        {"field", "value"},
                        {{"s0 = wall parameter", to_string(s0)},
                         {"Re Z_exc", vec_string(ze.re)},
                         {"Im Z_exc", vec_string(ze.im)},
                         {"Re Z_geo", vec_string(zg.re)},
                         {"Im Z_geo", vec_string(zg.im)},
                         {"g", "[[" + to_string(m.g(0, 0)) + ", " + to_string(m.g(0, 1)) + "], [" + to_string(m.g(1, 0)) +
                                   ", " + to_string(m.g(1, 1)) + "]]"},
                         {"det g", to_string(m.det)},
                         {"det positive", yes_no(m.det_positive)},
                         {"kernel (exceptional)", vec_string(ke)},
                         {"kernel (geometric)", vec_string(kg)},
                         {"tilde theta at s", vec_string(t.level0)},
                         {"tilde theta at s0", vec_string(t0.level0)}}});
  return rep;
}

DimVector parse_alpha(const std::string& text) {
  std::vector<std::int64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("--alpha expects three comma separated integers, got \"" + text + "\"");
    }
  }
  if (v.size() != 3) throw ParameterError("--alpha expects three comma separated integers, got \"" + text + "\"");
  const DimVector d{v[0], v[1], v[2]};
  if (!d.is_nonnegative() || d.is_zero()) throw ParameterError("--alpha must be nonnegative and nonzero");
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wall crossing toolkit for modules over the Beilinson algebra of P^2"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "md";
  std::vector<std::string> data_paths;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--data", data_paths, "reference data files or directories (default: $P2FLIP_DATA_DIR)");

  int r = 0, n = 1, q = 2, jobs = 1;
  std::string side = "all";
  const auto add_rn = [&](CLI::App* sub) {
    sub->add_option("--r", r, "r")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--n", n, "n")->required()->check(CLI::PositiveNumber);
  };

  auto* hodge = app.add_subcommand("hodge", "virtual Hodge polynomials of M_-, M_0, M_+");
  add_rn(hodge);
  hodge->add_option("--side", side, "minus, zero, plus or all")->check(CLI::IsMember({"minus", "zero", "plus", "all"}));

  auto* strata = app.add_subcommand("strata", "Brill-Noether strata table");
  add_rn(strata);

  auto* flip = app.add_subcommand("flip", "both sides and the flip difference identity");
  add_rn(flip);

  auto* walls = app.add_subcommand("walls", "candidate walls in alpha-perp");
  add_rn(walls);

  auto* count = app.add_subcommand("count", "brute-force point count of a stable locus over F_q");
  std::string alpha_text, count_side = "minus", guard_text = "2^34";
  bool stratified = false, timing = false;
  count->add_option("--alpha", alpha_text, "dimension vector a,b,c")->required();
  count->add_option("--q", q, "prime field size")->check(CLI::Range(2, kMaxPrime));
  count->add_option("--side", count_side, "minus, plus, zero_ss or zero_stable")
      ->check(CLI::IsMember({"minus", "plus", "zero", "zero_ss", "zero_stable"}));
  count->add_flag("--stratified", stratified, "bucket by Brill-Noether index (minus or plus)");
  count->add_option("--guard", guard_text, "budget on enumerated C-tuples, e.g. 2^34");
  count->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  count->add_flag("--timing", timing, "report elapsed time (output is then not reproducible)");

  auto* bridge = app.add_subcommand("bridgeland", "central charges and the GL(2) match");
  std::string s_text;
  bridge->add_option("--s", s_text, "rational s in (-1,1), e.g. -1/3")->required();
  bridge->add_option("--n", n, "n for the wall parameter")->required()->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "acceptance suite");
  std::string suite = "paper";
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> only;
  bool fast = false;
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember({"paper"}));
  verify->add_option("--seed", seed, "seed for randomized sweeps");
  verify->add_option("--only", only, "criterion ids to run")->delimiter(',')->check(CLI::Range(1, kCriterionCount));
  verify->add_flag("--fast", fast, "skip the slow enumerations");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    const HodgeData data = load_data(data_paths);
    if (*verify) {
      AcceptanceOptions options;
      options.seed = seed;
      options.include_slow = !fast;
      options.jobs = jobs;
      options.data = data;
      options.only = only;
      std::vector<CriterionResult> results;
      if (format == "json") {
        results = run_acceptance(options);
        json j;
        j["command"] = "verify";
        j["suite"] = suite;
        j["seed"] = seed;
        auto list = json::array();
        for (const auto& res : results) list.push_back(to_json(res));
        j["criteria"] = std::move(list);
        j["all_passed"] = all_passed(results);
        std::cout << j.dump(2) << "\n";
      } else {
        results = run_acceptance(options, &std::cout);
        std::cout << (all_passed(results) ? "all criteria passed" : "some criteria FAILED") << "\n";
      }
      return all_passed(results) ? 0 : 1;
    }

    Report rep;
    if (*hodge)
      rep = cmd_hodge(r, n, side, data);
    else if (*strata)
      rep = cmd_strata(r, n, data);
    else if (*flip)
      rep = cmd_flip(r, n, data);
    else if (*walls)
      rep = cmd_walls(r, n);
    else if (*count) {
      CountOptions options;
      options.guard = parse_guard(guard_text);
      options.jobs = jobs;
      rep = cmd_count(parse_alpha(alpha_text), q, parse_side(count_side), stratified, options, timing);
    } else if (*bridge)
      rep = cmd_bridgeland(parse_rational(s_text), n);
    render(rep, format, std::cout);
    return rep.ok ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
