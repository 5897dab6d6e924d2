#include "etf/io.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <filesystem>

using namespace etf;

TEST_CASE("frame json round trip is exact after canonicalization") {
  const EquiangularTightFrame frame = simplex_etf(3);
  const io::json j = io::frame_to_json(frame);
  CHECK(j["d"] == 3);
  CHECK(j["n"] == 4);

  // Serialize through text to include the number formatting in the loop.
  const io::json reparsed = io::json::parse(j.dump());
  const EquiangularTightFrame loaded = io::frame_from_json(reparsed);
  CHECK(max_abs(loaded.vectors() - canonical_phases(frame.vectors())) <= 1e-15);
}

TEST_CASE("frame json rejects malformed input") {
  CHECK_THROWS(io::frame_from_json(io::json::parse(R"({"d": 2, "n": 3})")));
  CHECK_THROWS(io::frame_from_json(io::json::parse(R"({"d": 2, "n": 3, "vectors": []})")));
  CHECK_THROWS(io::frame_from_json(
      io::json::parse(R"({"d": 2, "n": 3, "vectors": [[[1,0],[0,0]]]})")));
  // Valid shape, invalid frame: three copies of e1.
  CHECK_THROWS(io::frame_from_json(io::json::parse(
      R"({"d": 2, "n": 3, "vectors": [[[1,0],[0,0]],[[1,0],[0,0]],[[1,0],[0,0]]]})")));
}

TEST_CASE("density json round trip") {
  const DensityMatrix rho = random_density(3, 2, 17);
  const io::json j = io::json::parse(io::density_to_json(rho).dump());
  const DensityMatrix loaded = io::density_from_json(j);
  CHECK(max_abs(loaded.matrix() - rho.matrix()) <= 1e-15);
  CHECK_FALSE(io::is_bipartite_json(j));
}

TEST_CASE("bipartite json round trip") {
  const BipartiteDensityMatrix rho = random_separable_state(2, 2, 19);
  const io::json j = io::json::parse(io::bipartite_to_json(rho).dump());
  CHECK(io::is_bipartite_json(j));
  const BipartiteDensityMatrix loaded = io::bipartite_from_json(j);
  CHECK(loaded.dim_a() == 2);
  CHECK(loaded.dim_b() == 2);
  CHECK(max_abs(loaded.matrix() - rho.matrix()) <= 1e-15);
}

TEST_CASE("file round trip") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "etf_io_test_frame.json";
  const EquiangularTightFrame frame = simplex_etf(2);
  io::write_json_file(path, io::frame_to_json(frame));
  const EquiangularTightFrame loaded = io::frame_from_json(io::read_json_file(path));
  CHECK(max_abs(loaded.vectors() - canonical_phases(frame.vectors())) <= 1e-15);
  fs::remove(path);

  CHECK_THROWS(io::read_json_file(fs::temp_directory_path() / "etf_io_missing.json"));
}

TEST_CASE("bound report csv format") {
  BoundReport report;
  report.bound_name = "collision";
  report.alpha = OrderAlpha(2.0);
  report.bound_value = 1.0 / 3.0;
  report.achieved_value = 0.5;
  report.slack = 0.5 - 1.0 / 3.0;
  report.saturated = false;

  const std::string csv = io::to_csv(std::vector<BoundReport>{report});
  CHECK(csv.rfind("bound_name,alpha,bound_value,achieved,slack,saturated\n", 0) == 0);
  CHECK(csv.find("collision,2,0.33333333333333331,0.5,") != std::string::npos);
  CHECK(csv.find(",false\n") != std::string::npos);
}

TEST_CASE("verdict csv format") {
  WitnessVerdict verdict;
  verdict.criterion = "steering_tsallis";
  verdict.alpha = OrderAlpha::infinity();
  verdict.statistic = 0.25;
  verdict.threshold = 0.5;
  verdict.violated = true;

  const std::string csv = io::to_csv(std::vector<WitnessVerdict>{verdict});
  CHECK(csv.rfind("criterion,alpha,statistic,threshold,violated\n", 0) == 0);
  CHECK(csv.find("steering_tsallis,inf,0.25,0.5,true\n") != std::string::npos);
}

TEST_CASE("alpha formatting") {
  CHECK(io::format_alpha(std::nullopt).empty());
  CHECK(io::format_alpha(OrderAlpha(0.5)) == "0.5");
  CHECK(io::format_alpha(OrderAlpha(10.0)) == "10");
  CHECK(io::format_alpha(OrderAlpha::infinity()) == "inf");
}
