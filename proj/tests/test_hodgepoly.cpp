#include "doctest.h"

#include "p2flip/hodgepoly.hpp"
#include "p2flip/linalg.hpp"

using namespace p2flip;

namespace {

// Coefficient of z^n in prod_m prod_{s=-1,0,1} 1/(1 - u^{m+s} z^m), expanded
// naively as a two-variable series table[z][u].
std::vector<long long> gottsche_oracle(int n) {
  const int max_u = 2 * n + 1;
  std::vector<std::vector<long long>> table(n + 1, std::vector<long long>(max_u + 1, 0));
  table[0][0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int s = -1; s <= 1; ++s) {
      const int du = m + s;
      // multiply by 1/(1 - u^du z^m): in-place forward recurrence
      for (int z = m; z <= n; ++z)
        for (int u = du; u <= max_u; ++u) table[z][u] += table[z - m][u - du];
    }
  std::vector<long long> out(table[n].begin(), table[n].end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("arithmetic and normal form") {
  const HodgePoly a{1, 1}, b{1, -1};
  CHECK(a * b == HodgePoly{1, 0, -1});
  CHECK((a - a).is_zero());
  CHECK((a - a).degree() == -1);
  CHECK(HodgePoly{0, 0} == HodgePoly{});
  CHECK(HodgePoly{1, 2}.shifted(2) == HodgePoly{0, 0, 1, 2});
  CHECK(HodgePoly::monomial(3, 2) == HodgePoly{0, 0, 3});
  CHECK(HodgePoly{1, 2, 3}.coeff(7) == 0);
  CHECK(HodgePoly{1, 1, 1}.evaluate(2) == 7);
  CHECK(-HodgePoly{1} == HodgePoly{-1});
}

TEST_CASE("rendering in t") {
  CHECK(p2_hodge().to_t_string() == "t^4+t^2+1");
  CHECK(HodgePoly{}.to_t_string() == "0");
  CHECK(HodgePoly{-1, 0, 2}.to_t_string() == "2t^4-1");
  CHECK(HodgePoly{0, 1}.to_t_string() == "t^2");
}

TEST_CASE("json round trip") {
  const HodgePoly p{1, 2, 5, 6, 5, 2, 1};
  const auto j = to_json(p);
  CHECK(j["variable"] == "t2");
  CHECK(hodge_from_json(j) == p);
  CHECK_THROWS_AS(hodge_from_json(nlohmann::json::parse(R"({"variable":"t","coeffs":[1]})")), ParameterError);
  CHECK_THROWS_AS(hodge_from_json(nlohmann::json::parse(R"({"coeffs":"x"})")), ParameterError);
  const HodgePoly big = HodgePoly::monomial(BigInt(1) << 80, 1);
  CHECK(hodge_from_json(to_json(big)) == big);
}

TEST_CASE("gaussian binomials count subspaces") {
  CHECK(gaussian_binomial(1, 1) == HodgePoly{1});
  CHECK(gaussian_binomial(4, 1) == HodgePoly{1, 1, 1, 1});
  CHECK(gaussian_binomial(4, 2) == HodgePoly{1, 1, 2, 1, 1});
  CHECK(gaussian_binomial(0, 1).is_zero());
  CHECK(gaussian_binomial(-1, 0).is_zero());
  CHECK(gaussian_binomial(-2, 1).is_zero());
  CHECK(gaussian_binomial(3, 0) == HodgePoly{1});
  for (int q : {2, 3})
    for (int k = 0; k <= 4; ++k)
      for (int i = 0; i <= k + 1; ++i)
        CHECK(gaussian_binomial(k, i).evaluate(q) == BigInt(subspaces_of_dim(q, k, i).size()));
  for (int k = 0; k <= 8; ++k)
    for (int i = 0; i <= k; ++i) {
      const HodgePoly g = gaussian_binomial(k, i);
      CHECK(g.is_palindromic());
      CHECK(g.degree() == i * (k - i));
      CHECK(g == gaussian_binomial(k, k - i));
    }
}

TEST_CASE("Hilbert scheme of points on P^2") {
  CHECK(hilb_p2_hodge(0) == HodgePoly{1});
  CHECK(hilb_p2_hodge(1) == p2_hodge());
  CHECK(hilb_p2_hodge(2) == HodgePoly{1, 2, 3, 2, 1});
  CHECK(hilb_p2_hodge(3) == HodgePoly{1, 2, 5, 6, 5, 2, 1});
  CHECK(hilb_p2_hodge(2).evaluate(2) == 49);
  for (int n = 0; n <= 14; ++n) {
    const HodgePoly h = hilb_p2_hodge(n);
    const auto oracle = gottsche_oracle(n);
    REQUIRE(h.degree() + 1 == static_cast<int>(oracle.size()));
    for (int k = 0; k <= h.degree(); ++k) CHECK(h.coeff(k) == oracle[k]);
    CHECK(h.degree() == 2 * n);
    CHECK(h.is_palindromic());
    CHECK(h.has_nonnegative_coeffs());
  }
  CHECK_THROWS_AS(hilb_p2_hodge(-1), ParameterError);
}
