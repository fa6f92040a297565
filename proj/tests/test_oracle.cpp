// Exhaustive search over complements and the packaged identity suite.
#include <catch2/catch_amalgamated.hpp>

#include <qcdesign/oracle.hpp>

#include <string>
#include <vector>

using namespace qcdesign;

TEST_CASE("identity suite passes in dimension two") {
  const auto claims = verify_identities(2);
  REQUIRE(claims.size() == 13);
  const std::vector<std::string> names = {
      "reference-pools",
      "even-set-criterion",
      "complement-row-sum-identity",
      "complement-moment-constants",
      "aberration-tracks-complement-statistic",
      "complement-statistic-bound",
      "construction-suite",
      "row-profile-invariance",
      "distance-equals-direct",
      "scalar-moment-identity",
      "halving-preserves-wlp",
      "pipeline-matches-search",
      "design-regularity-floor",
  };
  for (std::size_t i = 0; i < claims.size(); ++i) {
    INFO(claims[i].name << ": " << claims[i].detail);
    CHECK(claims[i].name == names[i]);
    CHECK(claims[i].pass);
  }
  CHECK(all_pass(claims));
}

TEST_CASE("identity suite passes in dimension three") {
  const auto claims = verify_identities(3);
  REQUIRE(claims.size() == 13);
  for (const auto& c : claims) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.pass);
  }
}

TEST_CASE("identity suite supports only the exhaustive dimensions") {
  CHECK_THROWS_AS(verify_identities(4), std::invalid_argument);
  CHECK_THROWS_AS(verify_identities(1), std::invalid_argument);
}

TEST_CASE("search at deficiency one finds a single pattern class") {
  const SearchReport rep = brute_force_ma(2, 10, 16);
  CHECK(rep.candidates == 6);
  CHECK(rep.optima_count == 6);  // every singleton complement is equivalent
  CHECK(rep.optima.size() == 6);
  CHECK(rep.best.term_str(3) == "8");
  CHECK(rep.best.term_str(4) == "18");
  CHECK(compare_wlp(rep.best, ma_design(2, 16, 10).wlp) == 0);
}

TEST_CASE("search agrees with the pipeline on a two-member complement") {
  const SearchReport rep = brute_force_ma(2, 8, 16);
  CHECK(rep.candidates == 15);
  CHECK(compare_wlp(rep.best, ma_design(2, 16, 8).wlp) == 0);
}

TEST_CASE("odd search enumerates every designated member") {
  const SearchReport rep = brute_force_ma(2, 9, 16);  // deficiency 2, odd
  CHECK(rep.candidates == 2 * 15);
  CHECK(compare_wlp(rep.best, ma_design(2, 16, 9).wlp) == 0);
}

TEST_CASE("search respects its explicit budget") {
  CHECK_THROWS_AS(brute_force_ma(3, 48, 64, 10), std::domain_error);
  CHECK(SearchReport::optima_cap == 256);
}
