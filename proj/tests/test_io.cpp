#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spectral_minmax/errors.hpp"
#include "spectral_minmax/io.hpp"
#include "spectral_minmax/random.hpp"

using namespace spectral_minmax;
using nlohmann::json;

TEST_CASE("measure documents round trip") {
  const auto mu = measures::CompactMeasure({{0.5, 0.25}}, {{0.0, 1.0, 0.75, 0.75}});
  const auto doc = io::measure_to_json(mu);
  const auto back = io::measure_from_json(doc);
  REQUIRE(back.atoms().size() == 1);
  CHECK(back.atoms()[0].location == 0.5);
  CHECK(back.segments()[0].density_hi == 0.75);
  CHECK(back.alpha() == 0.0);
  CHECK(back.beta() == 1.0);
  CHECK(io::measure_to_json(back) == doc);
}

TEST_CASE("malformed measure documents name the defect") {
  CHECK_THROWS_AS(io::measure_from_json(json::array()), ValidationError);
  CHECK_THROWS_AS(io::measure_from_json(json{{"atoms", 3}}), ValidationError);
  try {
    io::measure_from_json(json{{"atoms", {{0.0, 0.5}, {1.0, "x"}}}});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("atoms[1]") != std::string::npos);
  }
  try {
    io::measure_from_json(json{{"segments", {{0.0, 1.0, 1.0}}}});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("segments[0]") != std::string::npos);
  }
  CHECK_THROWS_AS(io::measure_from_json(json{{"atoms", {{0.0, 0.4}}}}), ValidationError);
}

TEST_CASE("matrix documents") {
  const json real = {{"dim", 2}, {"re", {{1.0, 2.0}, {2.0, -1.0}}}};
  const auto a = io::hermitian_from_json(real);
  CHECK(a.matrix()(0, 1) == Complex(2.0, 0.0));

  const json complex = {{"dim", 2}, {"re", {{1.0, 0.0}, {0.0, 1.0}}}, {"im", {{0.0, 1.0}, {-1.0, 0.0}}}};
  CHECK(io::hermitian_from_json(complex).matrix()(1, 0) == Complex(0.0, -1.0));

  const Hermitian r = random_hermitian(4, std::uint64_t{5});
  const auto back = io::hermitian_from_json(io::matrix_to_json(r.matrix()));
  CHECK((back.matrix() - r.matrix()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(io::hermitian_from_json(json{{"dim", 2}, {"re", {{1.0, 2.0}, {3.0, 1.0}}}}), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 2}, {"re", {{1.0, 2.0}}}}), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"dim", 0}, {"re", json::array()}}), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(json{{"re", {{1.0}}}}), ValidationError);
}

TEST_CASE("families serialize with ranks") {
  lattice::Family fam{Projection::identity(3), Projection::zero(3)};
  const auto doc = io::family_to_json(fam);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["rank"] == 3);
  CHECK(doc[1]["rank"] == 0);
}

TEST_CASE("file reading errors") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/path.json"), ValidationError);
  const auto path = std::filesystem::temp_directory_path() / "spectral_minmax_bad.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(io::read_json_file(path), ValidationError);
  std::filesystem::remove(path);
}
