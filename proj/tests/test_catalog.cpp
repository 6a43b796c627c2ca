#include "doctest.h"
#include "finperf/catalog.hpp"
#include "finperf/error.hpp"

using namespace finperf;

TEST_CASE("group specs parse to groups of the right order") {
  CHECK(parse_group_spec("a5").group.order() == 60);
  CHECK(parse_group_spec("s5").group.order() == 120);
  CHECK(parse_group_spec("sl2(5)").group.order() == 120);
  CHECK(parse_group_spec("  SL2( 5 ) ").group.order() == 120);
  CHECK(parse_group_spec("subdirect-sl25").group.order() == 240);
  CHECK(parse_group_spec("gn(5,2,1)").group.order() == 960);
  CHECK(parse_group_spec("gn(5, 3, 1)").group.order() == 81 * 60);
  CHECK(parse_group_spec("perm{(1 2 3);(1 2)}").group.order() == 6);
  CHECK(parse_group_spec("perm{(1 2 3 4 5);(1 2)}").group.order() == 120);
  CHECK(parse_group_spec("perm{()}").group.order() == 1);
  CHECK(parse_group_spec("mat(5){1,1,0,1;0,-1,1,0}").group.order() == 120);
  CHECK(parse_group_spec("mat(3){1,1,0,1;0,-1,1,0}").group.order() == 24);  // SL2(3)
  CHECK(parse_group_spec("mat(2){1,1,0,1}").group.order() == 2);
  CHECK(parse_group_spec("a5").name == "a5");
}

TEST_CASE("catalog builders") {
  CHECK(catalog_a5xa5().group.order() == 3600);
  auto s = catalog_subdirect_sl25();
  CHECK(s.group.describe(0).find("(") == 0);
}

TEST_CASE("malformed group specs") {
  for (char const* bad : {"", "foo", "a5 x", "sl2(7)", "sl2", "gn(5,2)", "gn(4,2,1)", "gn(5,5,1)", "gn(5,2,0)",
                          "perm{(1 2}", "perm{(1 2)", "perm{(1 1)}", "perm{(0 1)}", "perm{(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21)}",
                          "mat(5){1,2,3}", "mat(5){0,0,0,0}", "mat(6){1,0,0,1}", "mat(5){1,0,0,1;1,0,0,0,1,0,0,0,1}",
                          "mat(5){1,,0,1}", "mat{1,0,0,1}", "mat(5)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_group_spec(bad), ParameterError);
  }
}

TEST_CASE("group spec caps") {
  CHECK_THROWS_AS(parse_group_spec("perm{(1 2 3 4 5 6 7);(1 2)}", GroupOptions{1000, 100}), ResourceError);
  CHECK_THROWS_AS(parse_group_spec("gn(5,2,3)"), ResourceError);
  CHECK(parse_group_spec("perm{(1 2 3 4 5 6);(1 2)}", GroupOptions{1000, 100}).group.order() == 720);
}
