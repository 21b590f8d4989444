#include "doctest.h"

#include <cstdlib>
#include <random>

#include "p2flip/kronecker.hpp"
#include "p2flip/oracle.hpp"
#include "p2flip/wallcross.hpp"

using namespace p2flip;

namespace {

const std::string kData = P2FLIP_TEST_DATA;

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& ex) {
    return ex.what();
  }
  return "";
}

}  // namespace

TEST_CASE("M^0 from the triangular system") {
  const auto m0 = m0_hodge(1, 3);
  CHECK(m0[0] == p2_hodge());
  CHECK(m0[1] == HodgePoly{0, 0, 2, 3, 3, 1, 1});
  CHECK(m0_hodge(1, 2)[1].is_zero());
  for (int n = 1; n <= 12; ++n) CHECK(m0_hodge(0, n)[0] == p2_hodge());
  CHECK_THROWS_AS(m0_hodge(2, 1), ParameterError);
}

TEST_CASE("r = 0 and r = 1 tables") {
  CHECK(e_plus(1, 3).poly == HodgePoly{1, 1, 3, 3, 3, 1, 1});
  CHECK(e_plus(1, 4).poly == HodgePoly{1, 2, 5, 8, 10, 8, 5, 2, 1});
  CHECK(e_plus(1, 2).empty);
  CHECK(e_plus(1, 2).poly.is_zero());
  for (int n = 1; n <= 20; ++n) {
    CHECK(e_minus(1, n).poly == hilb_p2_hodge(n));
    CHECK(e_minus(0, n).poly == p2_hodge());
    if (n >= 2) CHECK(e_plus(0, n).poly == p2_hodge());
    if (n >= 3) {
      const HodgePoly p = e_plus(1, n).poly;
      CHECK(p.is_palindromic());
      CHECK(p.has_nonnegative_coeffs());
      CHECK(p.degree() == 2 * n);
      CHECK(flip_difference(0, n).poly.is_zero());
      CHECK(e_zero(1, n).poly == m0_hodge(1, n)[0] + m0_hodge(1, n)[1]);
    }
  }
}

TEST_CASE("hypothesis flags") {
  const Hypotheses h = hypotheses(2, 3);
  CHECK(h.n_ge_r_minus_1);
  CHECK(h.n_ge_r);
  CHECK_FALSE(h.n_ge_r_plus_2);
  CHECK(e_plus(2, 3).empty);
  CHECK(e_plus(1, 3).flags.n_ge_r_plus_2);
  CHECK_THROWS_AS(e_minus(3, 1), ParameterError);
}

TEST_CASE("Brill-Noether index") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const KroneckerRep g = random_kronecker(2, 2, rng);
    if (!kronecker_theta0_stable(g)) continue;
    const BRep e = kron_to_minus(g);
    CHECK(bn_index(e, Side::minus) == hom_dims(e).h_from_s0);
    CHECK(bn_index(kron_to_plus(g), Side::plus) == hom_dims(kron_to_plus(g)).h_to_s0);
  }
  CHECK_THROWS_AS(bn_index(BRep::zero(2, alpha(0, 2)), Side::minus), ParameterError);
  CHECK_THROWS_AS(bn_index(BRep::zero(2, alpha(0, 2)), Side::zero_ss), ParameterError);
}

TEST_CASE("point counts through the lift match the polynomials at u = q") {
  CHECK(lifted_point_count(0, 2, 2, Side::minus) == Rational(e_minus(0, 2).poly.evaluate(2)));
  CHECK(lifted_point_count(0, 2, 2, Side::plus) == Rational(e_plus(0, 2).poly.evaluate(2)));
  CHECK(lifted_point_count(1, 2, 2, Side::minus) == Rational(e_minus(1, 2).poly.evaluate(2)));
  CHECK(lifted_point_count(1, 2, 2, Side::plus) == 0);
  CHECK(lifted_point_count(1, 3, 2, Side::plus) == Rational(e_plus(1, 3).poly.evaluate(2)));
  CHECK(lifted_point_count(0, 1, 3, Side::minus) == 13);
}

TEST_CASE("reference data is required for r >= 2") {
  CHECK_THROWS_AS(e_plus(2, 4), DataRequiredError);
  CHECK_THROWS_AS(minus_input(2, 4, HodgeData{}), DataRequiredError);
  CHECK(e_plus(2, 3).poly.is_zero());  // empty without needing data
}

TEST_CASE("ingesting reference data") {
  HodgeData data;
  data.load_directory(kData + "/good");
  CHECK(data.size() == 4);
  const HodgeRecord* rec = data.find(kFamilyMinus, 2, 4);
  REQUIRE(rec != nullptr);
  CHECK(rec->line == 2);
  CHECK(rec->provenance == "synthetic fixture");
  CHECK(data.find(kFamilyMinus, 2, 5)->line == 1);
  CHECK(data.find("other", 2, 4) != nullptr);

  // The triangular solve reproduces its input.
  CHECK(e_minus(2, 4, data).poly == rec->poly);
  const auto m0 = m0_hodge(2, 4, data);
  HodgePoly plus;
  for (int i = 0; i <= 2; ++i) plus += gaussian_binomial(4 - 2 - 2 + i, i) * m0[2 - i];
  CHECK(e_plus(2, 4, data).poly == plus);
  CHECK(e_minus(2, 4, data).poly - e_plus(2, 4, data).poly == flip_difference(2, 4, data).poly);
  CHECK(minus_input_provenance(2, 4, data).find("synthetic fixture") != std::string::npos);
  CHECK_THROWS_AS(e_minus(2, 1, data), DataRequiredError);
}

TEST_CASE("malformed data is rejected with line numbers") {
  HodgeData dup;
  const std::string dup_error = error_of([&] { dup.load_file(kData + "/duplicate.jsonl"); });
  CHECK(dup_error.find("duplicate.jsonl:3") != std::string::npos);
  CHECK(dup_error.find("first seen at") != std::string::npos);

  HodgeData bad;
  CHECK(error_of([&] { bad.load_file(kData + "/malformed.jsonl"); }).find("malformed.jsonl:2") != std::string::npos);

  HodgeData text;
  CHECK(error_of([&] { text.load_text("[\n{\"family\": \"M_minus\", \"r\": 2, \"n\": 4},\n]", "inline"); })
            .find("inline:2: missing field \"coeffs\"") != std::string::npos);
  CHECK_THROWS_AS(text.load_text("[{\"family\": \"M_minus\", \"r\": 2, \"n\": 4, \"coeffs\": [1]}", "x"), DataFormatError);
  CHECK_THROWS_AS(text.load_text("{\"family\": 3, \"r\": 2, \"n\": 4, \"coeffs\": [1]}", "x"), DataFormatError);
  CHECK_THROWS_AS(text.load_text("{\"family\": \"M_minus\", \"r\": 2, \"n\": 4, \"variable\": \"t\", \"coeffs\": [1]}", "x"),
                  DataFormatError);
  CHECK_THROWS_AS(text.load_file(kData + "/missing.json"), DataFormatError);

  HodgeData inconsistent;
  inconsistent.load_file(kData + "/inconsistent.jsonl");
  CHECK_THROWS_AS(e_minus(1, 3, inconsistent), InconsistencyError);
}

TEST_CASE("environment variable") {
  ::setenv("P2FLIP_DATA_DIR", (kData + "/good").c_str(), 1);
  CHECK(HodgeData::from_environment().size() == 4);
  ::setenv("P2FLIP_DATA_DIR", (kData + "/nowhere").c_str(), 1);
  CHECK(HodgeData::from_environment().empty());
  ::unsetenv("P2FLIP_DATA_DIR");
  CHECK(HodgeData::from_environment().empty());
}

TEST_CASE("strata table") {
  const StrataTable t = strata_table(1, 4);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1].fiber_minus == std::make_pair(5, 1));
  CHECK(t.rows[1].fiber_plus == std::make_pair(2, 1));
  CHECK(t.rows[1].m0_poly == p2_hodge());
  const auto j = to_json(t);
  CHECK(j["rows"][0]["m0"]["variable"] == "t2");
}
