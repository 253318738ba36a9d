#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "imsel/csv.hpp"
#include "imsel/errors.hpp"
#include "test_util.hpp"

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/imsel_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE("csv") {

TEST_CASE("reads the prostate file") {
  const imsel::Dataset data = imsel::read_dataset_csv(testutil::prostate_path(), "lpsa");
  CHECK(data.n() == 97);
  CHECK(data.p() == 8);
  CHECK(data.names.front() == "lcavol");
  CHECK(data.names.back() == "pgg45");
  CHECK(data.y(0) == doctest::Approx(-0.430782916092).epsilon(1e-12));
}

TEST_CASE("non-numeric cell names row and column") {
  const auto path = write_temp("bad.csv", "a,b,y\n1,2,3\n4,oops,6\n");
  bool threw = false;
  try {
    imsel::read_dataset_csv(path, "y");
  } catch (const imsel::CsvError& e) {
    threw = true;
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("'b'") != std::string::npos);
  }
  CHECK(threw);
  std::remove(path.c_str());
}

TEST_CASE("missing cell is an error") {
  const auto path = write_temp("missing.csv", "a,b,y\n1,,3\n");
  CHECK_THROWS_AS(imsel::read_dataset_csv(path, "y"), imsel::CsvError);
  std::remove(path.c_str());
}

TEST_CASE("ragged row is an error") {
  const auto path = write_temp("ragged.csv", "a,b,y\n1,2\n");
  CHECK_THROWS_AS(imsel::read_dataset_csv(path, "y"), imsel::CsvError);
  std::remove(path.c_str());
}

TEST_CASE("unknown response column") {
  const auto path = write_temp("resp.csv", "a,b\n1,2\n");
  CHECK_THROWS_AS(imsel::read_dataset_csv(path, "z"), imsel::CsvError);
  std::remove(path.c_str());
}

TEST_CASE("quoted fields and CRLF are accepted") {
  const auto path = write_temp("quoted.csv", "\"a\",b\r\n\"1.5\",2\r\n");
  const imsel::Dataset data = imsel::read_dataset_csv(path, "b");
  CHECK(data.names == std::vector<std::string>{"a"});
  CHECK(data.X(0, 0) == 1.5);
  CHECK(data.y(0) == 2.0);
  std::remove(path.c_str());
}

}  // TEST_SUITE
