#include "doctest.h"
#include "properties.hpp"

using namespace imexcouple::testing;

namespace {

void expect(const PropertyResult& r) {
  INFO(r.name << " worst " << r.worst << " bound " << r.bound << " " << r.detail);
  CHECK(r.ok);
}

}  // namespace

TEST_CASE("roe flux properties") {
  for (unsigned seed : {1u, 2u, 3u}) {
    expect(roe_consistency(1000, seed));
    expect(roe_antisymmetry(1000, seed));
  }
}

TEST_CASE("tableau order conditions") { expect(tableau_conditions()); }

TEST_CASE("linearized operator against finite differences") {
  expect(linop_oracle("periodic"));
  expect(linop_oracle("walls"));
}

TEST_CASE("vertical operator locality") { expect(vertical_locality()); }

TEST_CASE("explicit limit identity") { expect(explicit_limit_identity()); }

TEST_CASE("dense output endpoints") {
  expect(dense_output_endpoint(3));
  expect(dense_output_endpoint(4));
}
