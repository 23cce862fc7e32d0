#include <doctest.h>

#include "oalat/fixtures.hpp"

using namespace oalat;

TEST_CASE("embedded fixtures resolve with or without extension") {
  CHECK(fixtures().size() >= 15);
  CHECK(find_fixture("peres_57_40.mmp") == find_fixture("peres_57_40"));
  CHECK(find_fixture("bub_49_36")->substr(0, 4) == "123,");
  CHECK(find_fixture("bub_49_36.vec")->substr(0, 1) == "#");
  CHECK_FALSE(find_fixture("missing.mmp"));
}
