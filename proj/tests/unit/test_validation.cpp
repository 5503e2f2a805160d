#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fpcr/validation.hpp"

using namespace fpcr;

TEST_CASE("quick validation suite passes with at least ten named checks") {
  ValidationOptions options;
  options.quick = true;
  const std::vector<ValidationCheck> checks = run_validation_suite(options);
  CHECK(checks.size() >= 10);

  std::set<std::string> names;
  for (const ValidationCheck& check : checks) {
    INFO(check.name, " value=", check.value, " detail=", check.detail);
    CHECK(check.passed);
    names.insert(check.name);
  }
  CHECK(names.size() == checks.size());  // names are unique
}

TEST_CASE("shrinkage experiment produces positive distances") {
  const ShrinkageResult result = gaussian_reference_shrinkage(60, 240, 64, 3, 0.4, 99);
  CHECK(result.w2_small_n > 0.0);
  CHECK(result.w2_large_n > 0.0);
}

TEST_CASE("calibration experiment produces a distance in [0,1]") {
  const double ks = bootstrap_calibration_ks(80, 64, 17);
  CHECK(ks >= 0.0);
  CHECK(ks <= 1.0);
}
