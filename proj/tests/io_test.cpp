#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "kfree/io.hpp"

using namespace kfree;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

size_t count_subst(const std::string& hay, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("field literals parse to the expected invariants") {
  NumberField F = parse_field("1,0,1");
  CHECK(F.degree == 2);
  CHECK(F.discriminant == -4);
  NumberField Q = parse_field("0,1");
  CHECK(Q.degree == 1);
  CHECK_THROWS_AS(parse_field("1,0"), Error);  // leading coefficient zero
  CHECK_THROWS_AS(parse_field("garbage"), Error);
}

TEST_CASE("element literals in both sugar and tuple form") {
  NumberField F = parse_field("1,0,1");
  CHECK(parse_elem(F, "8-6i") == elem_ll(F, {8, -6}));
  CHECK(parse_elem(F, "(8,-6)") == elem_ll(F, {8, -6}));
  CHECK(parse_elem(F, "i") == elem_ll(F, {0, 1}));
  CHECK(parse_elem(F, "-i") == elem_ll(F, {0, -1}));
  CHECK(parse_elem(F, "3") == elem_ll(F, {3, 0}));
  CHECK(parse_elem(F, "-42") == elem_ll(F, {-42, 0}));
  CHECK(parse_elem(F, "2+3i") == elem_ll(F, {2, 3}));
  CHECK(parse_elem(F, elem_str(elem_ll(F, {8, -6}))) == elem_ll(F, {8, -6}));

  NumberField R = parse_field("-2,0,1");
  CHECK(parse_elem(R, "1+2s") == elem_ll(R, {1, 2}));
  CHECK(parse_elem(R, "2-s") == elem_ll(R, {2, -1}));

  NumberField Q = parse_field("0,1");
  CHECK(parse_elem(Q, "-7") == elem_ll(Q, {-7}));

  CHECK_THROWS_AS(parse_elem(F, "2+"), Error);
  CHECK_THROWS_AS(parse_elem(F, "(1,2,3)"), Error);
  CHECK_THROWS_AS(parse_elem(F, "abc"), Error);
  CHECK_THROWS_AS(parse_elem(Q, "i"), Error);  // no sqrt(-1) here
}

TEST_CASE("shift lists split on semicolons") {
  NumberField F = parse_field("1,0,1");
  auto sh = parse_shifts(F, "1;i;-1;-i");
  REQUIRE(sh.size() == 4);
  CHECK(sh[1] == elem_ll(F, {0, 1}));
  CHECK(sh[3] == elem_ll(F, {0, -1}));
}

TEST_CASE("ideal literals round trip through their string form") {
  NumberField F = parse_field("1,0,1");
  SplitMix64 rng(31);
  for (int t = 0; t < 25; ++t) {
    Int x = rng.range(-9, 9), y = rng.range(-9, 9);
    if (x == 0 && y == 0) x = 1;
    Ideal a = principal(elem(F, {x, y}));
    CHECK(parse_ideal(F, ideal_str(a)) == a);
  }
  Ideal two = parse_ideal(F, "1+i;1-i");
  CHECK(two.norm == 2);
}

TEST_CASE("value and rational formatting") {
  CHECK(format_value(0.0L, true) == "0 (exact)");
  CHECK(format_value(1.0L / 3.0L, false) == "0.333333333333");
  CHECK(format_value(0.13026451256L, false) == "0.13026451256");
  CHECK(format_rat(Rat(3, 4)) == "3/4");
  CHECK(format_rat(Rat(5)) == "5");
  CHECK(format_rat(Rat(-1, 2)) == "-1/2");
}

TEST_CASE("bitmap export freezes to exact bytes") {
  NumberField F = parse_field("1,0,1");
  SieveGrid g = sieve(F, 2, 2);
  export_grid_pgm(g, "/tmp/kfree_test_grid.pgm");
  std::string want = "P5\n3 3\n1\n";
  // rows from largest to smallest second coordinate; only 0 is not 2-free
  const char data[9] = {0, 0, 0, 0, 1, 0, 0, 0, 0};
  want.append(data, 9);
  CHECK(slurp("/tmp/kfree_test_grid.pgm") == want);

  SieveGrid tiny = sieve(F, 2, 1);
  CHECK_THROWS_AS(export_grid_pgm(tiny, "/tmp/kfree_test_tiny.pgm"), Error);
}

TEST_CASE("grid table export lists every ball point") {
  NumberField Q = parse_field("0,1");
  SieveGrid g = sieve(Q, 2, 1);
  export_grid_csv(g, "/tmp/kfree_test_grid.csv");
  CHECK(slurp("/tmp/kfree_test_grid.csv") == "a0,kfree\n-1,1\n0,0\n1,1\n");
}

TEST_CASE("spectrum exports carry one record per character") {
  NumberField F = parse_field("1,0,1");
  auto chars = lambda_approx(F, 2, 25);
  REQUIRE(chars.size() == 52);

  export_lambda_csv(F, chars, 2, 10000, "/tmp/kfree_test_lambda.csv");
  std::string csv = slurp("/tmp/kfree_test_lambda.csv");
  CHECK(count_subst(csv, "\n") == 53);
  CHECK(csv.rfind("num0,num1,den,level,sigma\n", 0) == 0);

  export_lambda_svg(chars, 2, "/tmp/kfree_test_lambda.svg");
  std::string svg = slurp("/tmp/kfree_test_lambda.svg");
  CHECK(count_subst(svg, "<circle") == 52);
  CHECK(count_subst(svg, "</svg>") == 1);

  export_lambda_svg({}, 2, "/tmp/kfree_test_empty.svg");
  std::string empty = slurp("/tmp/kfree_test_empty.svg");
  CHECK(count_subst(empty, "<circle") == 0);
  CHECK(count_subst(empty, "<svg") == 1);
}
