#include <doctest.h>

#include "oracles.hpp"

using namespace unitgroup;
using namespace unitgroup::oracle;

TEST_CASE("ideal membership against Macaulay matrices") {
  OracleReport r = ideal_membership(50, 20240601);
  INFO(r.first_failure);
  CHECK(r.trials == 100);
  CHECK(r.ok());
}

TEST_CASE("torsion relations against the Klein group table") {
  OracleReport r = klein_torsion(7);
  INFO(r.first_failure);
  CHECK(r.ok());
}

TEST_CASE("Miller interpolation against line divisors") {
  OracleReport r = miller_roundtrip(25, 11);
  INFO(r.first_failure);
  CHECK(r.trials == 25);
  CHECK(r.ok());
}

TEST_CASE("height properties on small points") {
  HeightReport r = height_properties(20, 3);
  CHECK(r.max_parallelogram <= 6e-8L);
  CHECK(r.max_doubling <= 5e-8L);
  CHECK(r.max_two_torsion < 1e-8L);
  CHECK(r.q1 > 1e-3L);
}
