#include <sstream>

#include "doctest.h"

#include "dynnim/tables.hpp"

using namespace dynnim;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("g2 csv table for weight 15") {
  std::ostringstream os;
  write_g2_table(os, 15, Format::csv);
  const auto rows = lines(os.str());
  REQUIRE(rows.size() == 73);
  CHECK(rows[0] == "x,y,verdict,family");
  CHECK(rows[1] == "0,0,P,P1");
  CHECK(rows[2] == "0,1,P,P3");
  CHECK(rows[3] == "0,2,N,");
  std::size_t p_rows = 0;
  for (const auto& r : rows) p_rows += r.find(",P,") != std::string::npos;
  CHECK(p_rows == 16);

  std::ostringstream again;
  write_g2_table(again, 15, Format::csv);
  CHECK(again.str() == os.str());
}

TEST_CASE("g1 block dumps") {
  std::ostringstream csv;
  write_g1_blocks(csv, BoundFn::constant(1), 1, 1, 6, Format::csv);
  CHECK(lines(csv.str()) ==
        std::vector<std::string>{"k,n,lo,hi", "1,0,0,0", "1,1,2,2", "1,2,4,4", "1,3,6,6"});

  std::ostringstream text;
  write_g1_blocks(text, BoundFn::affine(1, 0), 1, 2, 15, Format::text);
  CHECK(lines(text.str()) ==
        std::vector<std::string>{"k=1: {0} [2,3] [6,8] [12,15]", "k=2: {0} [3,4] [8,10] {15}"});

  const auto json = g1_blocks_json(BoundFn::constant(1), 1, 1, 2);
  CHECK(json.dump() == R"([{"hi":0,"k":1,"lo":0,"n":0},{"hi":2,"k":1,"lo":2,"n":1}])");
}

TEST_CASE("g2 json table for weight 0 holds one record") {
  const auto json = g2_table_json(0);
  REQUIRE(json.size() == 1);
  CHECK(json[0] == nlohmann::json{{"x", 0}, {"y", 0}, {"verdict", "P"}, {"family", "P1"}});
  CHECK(g2_table_json(2)[2]["family"].is_null());
}

TEST_CASE("text grid marks P cells") {
  std::ostringstream os;
  write_g2_table(os, 3, Format::text);
  const auto rows = lines(os.str());
  CHECK(rows[0] == " 3 | P");
  CHECK(rows[1] == " 2 | .");
  CHECK(rows[2] == " 1 | P .");
  CHECK(rows[3] == " 0 | P P");
}

TEST_CASE("format names") {
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("json") == Format::json);
  CHECK(parse_format("text") == Format::text);
  CHECK_THROWS_AS(parse_format("xml"), ParseError);
}
