#include "p2flip/wallcross.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace p2flip {

int bn_index(const BRep& e, Side side) {
  if (side != Side::minus && side != Side::plus) throw ParameterError("bn_index is defined for minus and plus");
  if (!stability_criterion(e, side)) throw ParameterError("bn_index: module is not stable on the " + to_string(side) + " side");
  const HomDims h = hom_dims(e);
  return side == Side::minus ? h.h_from_s0 : h.h_to_s0;
}

namespace {

struct Chunk {
  std::string text;
  std::size_t line;
};

// Splits a top-level JSON array into its element texts, remembering where each starts.
std::vector<Chunk> split_array(const std::string& text, std::size_t first_line) {
  std::vector<Chunk> out;
  std::size_t line = first_line, start_line = first_line;
  int depth = 0;
  bool in_string = false, escaped = false;
  std::string current;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      current += c;
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    if (c == '[' || c == '{') {
      if (depth++ == 0) continue;  // opening bracket of the array itself
    } else if (c == ']' || c == '}') {
      if (--depth == 0) break;
    } else if (c == ',' && depth == 1) {
      out.push_back({current, start_line});
      current.clear();
      continue;
    }
    if (depth >= 1) {
      if (current.find_first_not_of(" \t\r\n") == std::string::npos && !std::isspace(static_cast<unsigned char>(c)))
        start_line = line;
      current += c;
    }
  }
  if (depth != 0) throw DataFormatError("unterminated JSON array", line);
  if (current.find_first_not_of(" \t\r\n") != std::string::npos) out.push_back({current, start_line});
  return out;
}

HodgeRecord parse_record(const std::string& text, const std::string& source, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw DataFormatError(source + ":" + std::to_string(line) + ": invalid JSON (" + ex.what() + ")", line);
  }
  const auto fail = [&](const std::string& why) {
    return DataFormatError(source + ":" + std::to_string(line) + ": " + why, line);
  };
  if (!j.is_object()) throw fail("each entry must be a JSON object");
  for (const char* key : {"family", "r", "n", "coeffs"})
    if (!j.contains(key)) throw fail(std::string("missing field \"") + key + "\"");
  if (!j["family"].is_string()) throw fail("\"family\" must be a string");
  if (!j["r"].is_number_integer() || !j["n"].is_number_integer()) throw fail("\"r\" and \"n\" must be integers");
  HodgeRecord rec;
  rec.family = j["family"].get<std::string>();
  rec.r = j["r"].get<int>();
  rec.n = j["n"].get<int>();
  try {
    rec.poly = hodge_from_json(j);
  } catch (const std::exception& ex) {
    throw fail(ex.what());
  }
  if (j.contains("provenance") && j["provenance"].is_string()) rec.provenance = j["provenance"].get<std::string>();
  rec.source = source;
  rec.line = line;
  return rec;
}

}  // namespace

void HodgeData::add(HodgeRecord record) {
  auto key = std::make_tuple(record.family, record.r, record.n);
  if (const auto it = records_.find(key); it != records_.end())
    throw DataFormatError(record.source + ":" + std::to_string(record.line) + ": duplicate entry for (" +
                              record.family + ", r=" + std::to_string(record.r) + ", n=" + std::to_string(record.n) +
                              "), first seen at " + it->second.source + ":" + std::to_string(it->second.line),
                          record.line);
  records_.emplace(std::move(key), std::move(record));
}

void HodgeData::load_text(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return;
  if (text[first] == '[') {
    const std::size_t first_line = 1 + std::count(text.begin(), text.begin() + first, '\n');
    for (const auto& chunk : split_array(text.substr(first), first_line))
      add(parse_record(chunk.text, source, chunk.line));
    return;
  }
  std::istringstream in(text);
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
    add(parse_record(row, source, line));
  }
}

void HodgeData::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataFormatError("cannot open data file " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_text(buffer.str(), path.string());
}

void HodgeData::load_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".json" || ext == ".jsonl")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) load_file(f);
}

HodgeData HodgeData::from_environment() {
  HodgeData data;
  if (const char* dir = std::getenv("P2FLIP_DATA_DIR"); dir != nullptr && *dir != '\0') {
    if (std::filesystem::is_directory(dir)) data.load_directory(dir);
  }
  return data;
}

const HodgeRecord* HodgeData::find(const std::string& family, int r, int n) const {
  const auto it = records_.find(std::make_tuple(family, r, n));
  return it == records_.end() ? nullptr : &it->second;
}

Hypotheses hypotheses(int r, int n) { return {n >= r - 1, n >= r, n >= r + 2}; }

nlohmann::ordered_json to_json(const Hypotheses& h) {
  nlohmann::ordered_json j;
  j["n>=r-1"] = h.n_ge_r_minus_1;
  j["n>=r"] = h.n_ge_r;
  j["n>=r+2"] = h.n_ge_r_plus_2;
  return j;
}

HodgePoly minus_input(int r, int n, const HodgeData& data) {
  if (r < 0 || n < 1) throw ParameterError("need r >= 0 and n >= 1");
  const HodgeRecord* rec = data.find(kFamilyMinus, r, n);
  if (r <= 1) {
    const HodgePoly builtin = r == 0 ? p2_hodge() : hilb_p2_hodge(n);
    if (rec != nullptr && rec->poly != builtin)
      throw InconsistencyError("ingested e(M_-) for r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                               " disagrees with the built-in value");
    return builtin;
  }
  if (rec == nullptr)
    throw DataRequiredError("e(M_-(alpha_{" + std::to_string(r) + "," + std::to_string(n) +
                            "})) is not built in; supply it with a reference-data file (family \"" + kFamilyMinus +
                            "\")");
  return rec->poly;
}

std::string minus_input_provenance(int r, int n, const HodgeData& data) {
  if (r == 0) return "built-in: projective plane";
  if (r == 1) return "built-in: Hilbert scheme generating function";
  const HodgeRecord* rec = data.find(kFamilyMinus, r, n);
  if (rec == nullptr) return "missing";
  return rec->provenance.empty() ? rec->source : rec->provenance + " (" + rec->source + ")";
}

std::vector<HodgePoly> m0_hodge(int r, int n, const HodgeData& data) {
  if (r < 0 || n < 1) throw ParameterError("m0_hodge needs r >= 0 and n >= 1");
  if (n < r) throw ParameterError("m0_hodge needs n >= r");
  std::vector<HodgePoly> m0(r + 1);
  for (int rp = 0; rp <= r; ++rp) {
    // The i = 0 coefficient is [n+1-rp, 0] = 1, so the system is unitriangular.
    HodgePoly rest = minus_input(rp, n, data);
    for (int i = 1; i <= rp; ++i) rest -= gaussian_binomial(n + 1 - rp + i, i) * m0[rp - i];
    m0[rp] = std::move(rest);
  }
  return m0;
}

namespace {

std::vector<std::string> provenance_list(int r, int n, const HodgeData& data) {
  std::vector<std::string> out;
  for (int rp = 0; rp <= r; ++rp)
    out.push_back("e(M_-(alpha_" + std::to_string(rp) + ")): " + minus_input_provenance(rp, n, data));
  return out;
}

void require_minus_range(int r, int n) {
  if (r < 0 || n < 1) throw ParameterError("need r >= 0 and n >= 1");
  if (n < r - 1) throw ParameterError("hypothesis n >= r-1 fails: the minus side is empty for r=" + std::to_string(r) +
                                      ", n=" + std::to_string(n));
}

}  // namespace

HodgeResult e_minus(int r, int n, const HodgeData& data) {
  require_minus_range(r, n);
  HodgeResult out;
  out.flags = hypotheses(r, n);
  out.provenance = provenance_list(r, n, data);
  if (n < r) {
    out.poly = minus_input(r, n, data);
    return out;
  }
  const auto m0 = m0_hodge(r, n, data);
  for (int i = 0; i <= r; ++i) out.poly += gaussian_binomial(n + 1 - r + i, i) * m0[r - i];
  return out;
}

HodgeResult e_plus(int r, int n, const HodgeData& data) {
  require_minus_range(r, n);
  HodgeResult out;
  out.flags = hypotheses(r, n);
  if (n < r + 2) {
    // Every fiber Gr(n-2-r+i, i) is empty.
    out.empty = true;
    return out;
  }
  out.provenance = provenance_list(r, n, data);
  const auto m0 = m0_hodge(r, n, data);
  for (int i = 0; i <= r; ++i) out.poly += gaussian_binomial(n - 2 - r + i, i) * m0[r - i];
  return out;
}

HodgeResult e_zero(int r, int n, const HodgeData& data) {
  require_minus_range(r, n);
  if (n < r) throw ParameterError("e_zero needs n >= r");
  HodgeResult out;
  out.flags = hypotheses(r, n);
  out.provenance = provenance_list(r, n, data);
  const auto m0 = m0_hodge(r, n, data);
  for (int i = 0; i <= r; ++i) out.poly += m0[r - i];
  return out;
}

HodgeResult flip_difference(int r, int n, const HodgeData& data) {
  require_minus_range(r, n);
  if (n < r) throw ParameterError("flip_difference needs n >= r");
  HodgeResult out;
  out.flags = hypotheses(r, n);
  out.provenance = provenance_list(r, n, data);
  const auto m0 = m0_hodge(r, n, data);
  for (int i = 1; i <= r; ++i)
    out.poly += (gaussian_binomial(n + 1 - r + i, i) - gaussian_binomial(n - 2 - r + i, i)) * m0[r - i];
  return out;
}

StrataTable strata_table(int r, int n, const HodgeData& data) {
  StrataTable t;
  t.r = r;
  t.n = n;
  const auto m0 = m0_hodge(r, n, data);
  for (int i = 0; i <= r; ++i) t.rows.push_back({i, {n + 1 - r + i, i}, {n - 2 - r + i, i}, m0[r - i]});
  return t;
}

nlohmann::ordered_json to_json(const StrataTable& table) {
  nlohmann::ordered_json j;
  j["r"] = table.r;
  j["n"] = table.n;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json o;
    o["i"] = row.i;
    o["fiber_minus"] = {row.fiber_minus.first, row.fiber_minus.second};
    o["fiber_plus"] = {row.fiber_plus.first, row.fiber_plus.second};
    o["m0"] = to_json(row.m0_poly);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace p2flip
