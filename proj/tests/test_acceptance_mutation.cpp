#include "pseudocyl/acceptance.hpp"

#include <doctest.h>

using namespace pseudocyl;

TEST_CASE("oracle agreement catches a sign error in the closed-form Ricci tensor") {
  acceptance::Options mutated;
  mutated.ricci_formula = conformal::RicciFormula::kAlternativeDisplay;
  const acceptance::CriterionResult r = acceptance::run_criterion(6, mutated);
  CHECK_FALSE(r.passed);
  CHECK(r.measurements["n4"]["ricci"].get<double>() > 1e-2);
  // the Christoffel and scalar comparisons do not depend on the R00 formula
  CHECK(r.measurements["n4"]["christoffel"].get<double>() < 1e-6);
}

TEST_CASE("criteria are listed in order and unknown ids are rejected") {
  const auto& all = acceptance::criteria();
  REQUIRE(all.size() == 11);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].id == static_cast<int>(i) + 1);
  CHECK_THROWS(acceptance::run_criterion(12));
  const auto r = acceptance::run_criterion(1);
  CHECK(r.passed);
  CHECK(acceptance::summary_line(r) == "PASS  1 threshold reproduction");
}
