#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "p2flip/hodgepoly.hpp"
#include "p2flip/repcore.hpp"
#include "p2flip/stability.hpp"

namespace p2flip {

/// dim Hom(S_0, E) on the minus side, dim Hom(E, S_0) on the plus side.
/// Throws ParameterError unless E satisfies the criterion of that side.
int bn_index(const BRep& e, Side side);

/// One ingested polynomial, e.g. {"family":"M_minus","r":2,"n":4,"coeffs":[...]}.
struct HodgeRecord {
  std::string family;
  int r = 0;
  int n = 0;
  HodgePoly poly;
  std::string provenance;
  std::string source;  // file or label it came from
  std::size_t line = 0;
};

/// Reference polynomials keyed by (family, r, n).
class HodgeData {
 public:
  /// JSON lines or a single JSON array. Unknown fields are ignored; a
  /// duplicate (family, r, n) or a malformed entry raises DataFormatError
  /// carrying the 1-based line of the offending entry.
  void load_text(const std::string& text, const std::string& source = "<text>");
  void load_file(const std::filesystem::path& path);
  /// Every *.json and *.jsonl file in the directory, in name order.
  void load_directory(const std::filesystem::path& dir);
  /// Loads $P2FLIP_DATA_DIR when it is set and exists.
  static HodgeData from_environment();

  void add(HodgeRecord record);
  const HodgeRecord* find(const std::string& family, int r, int n) const;
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::map<std::tuple<std::string, int, int>, HodgeRecord>& records() const { return records_; }

 private:
  std::map<std::tuple<std::string, int, int>, HodgeRecord> records_;
};

inline constexpr const char* kFamilyMinus = "M_minus";

/// Which standing hypotheses on (r, n) hold.
struct Hypotheses {
  bool n_ge_r_minus_1 = false;  // minus side nonempty
  bool n_ge_r = false;          // chamber hypothesis for the strata recursion
  bool n_ge_r_plus_2 = false;   // plus side nonempty
};
Hypotheses hypotheses(int r, int n);
nlohmann::ordered_json to_json(const Hypotheses& h);

/// e(M_-(alpha_{r,n})): 1+u+u^2 for r = 0, the Hilbert scheme for r = 1, data otherwise.
HodgePoly minus_input(int r, int n, const HodgeData& data);
/// Where minus_input(r, n) came from.
std::string minus_input_provenance(int r, int n, const HodgeData& data);

/// e(M^0(alpha_{r',n})) for r' = 0..r from the triangular system
/// e(M_-(alpha_{r',n})) = sum_i [n+1-r'+i, i] e(M^0(alpha_{r'-i,n})). Needs n >= r.
std::vector<HodgePoly> m0_hodge(int r, int n, const HodgeData& data = {});

struct HodgeResult {
  HodgePoly poly;
  Hypotheses flags;
  bool empty = false;                  // the moduli space is known to be empty
  std::vector<std::string> provenance;  // inputs used
};

HodgeResult e_minus(int r, int n, const HodgeData& data = {});
/// Sum over strata of [n-2-r+i, i] e(M^0(alpha_{r-i})); zero (and flagged empty) for n < r+2.
HodgeResult e_plus(int r, int n, const HodgeData& data = {});
HodgeResult e_zero(int r, int n, const HodgeData& data = {});
/// sum_{i>0} ([n+1-r+i, i] - [n-2-r+i, i]) e(M^0(alpha_{r-i})).
HodgeResult flip_difference(int r, int n, const HodgeData& data = {});

struct StrataRow {
  int i = 0;
  std::pair<int, int> fiber_minus;  // Gr(k, i) with k = n+1-r+i
  std::pair<int, int> fiber_plus;   // k = n-2-r+i
  HodgePoly m0_poly;                // e(M^0(alpha_{r-i,n}))
};

struct StrataTable {
  int r = 0;
  int n = 0;
  std::vector<StrataRow> rows;
};

StrataTable strata_table(int r, int n, const HodgeData& data = {});
nlohmann::ordered_json to_json(const StrataTable& table);

}  // namespace p2flip
