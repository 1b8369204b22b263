#include "pspin/convergence.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace pspin;

TEST_SUITE("convergence") {
  TEST_CASE("observed order of a power law") {
    CHECK(observed_order(16.0, 1.0, 0.2, 0.1) == doctest::Approx(4.0));
    CHECK(observed_order(4.0, 1.0, 0.3, 0.15) == doctest::Approx(2.0));
  }

  TEST_CASE("classification") {
    const std::vector<double> h{0.4, 0.2, 0.1};
    CHECK(classify("a", {1.0, 1.0 / 16, 1.0 / 256}, h, 4, 1e-11).status == "PASS");
    CHECK(classify("b", {1.0, 1.0 / 4, 1.0 / 16}, h, 4, 1e-11).status == "FAIL");
    CHECK(classify("c", {1.0, 1.0 / 4, 1.0 / 16}, h, 2, 1e-11).status == "PASS");
    CHECK(classify("d", {0.0, 1e-15, 2e-15}, h, 4, 1e-11).status == "ROUNDOFF");
    CHECK(classify("e", {1.0, 1.0, 1.0}, h, 4, 1e-11).status == "FAIL");
    const auto q = classify("f", {1.0, 1.0 / 16, 1.0 / 256}, h, 4, 1e-11);
    REQUIRE(q.orders.size() == 2);
    CHECK(q.orders[1] == doctest::Approx(4.0));
    const auto nan = classify("g", {1.0, NAN, 0.1}, h, 4, 1e-11);
    CHECK(nan.status == "FAIL");
  }

  TEST_CASE("Minkowski refinement study is at round-off and writes its table") {
    RunConfig cfg;
    cfg.scenario.name = "minkowski";
    cfg.resolutions = {8, 16, 32};
    cfg.t_end = 0.25;
    cfg.out_dir = (std::filesystem::temp_directory_path() / "pspin_conv").string();
    const ConvergenceTable t = run_convergence(cfg);
    CHECK(t.all_pass());
    CHECK(t.declared_order == 4);
    REQUIRE(t.spacings.size() == 3);
    CHECK(t.spacings[0] == doctest::Approx(2.0 * t.spacings[1]));
    for (const auto& q : t.quantities) {
      CAPTURE(q.name);
      CHECK(q.status == "ROUNDOFF");
    }
    const std::string text = format_table(t);
    CHECK(text.find("alpha") != std::string::npos);
    const std::string csv = cfg.out_dir + "_table.csv";
    write_table_csv(csv, t);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "quantity,resolution,spacing,value,order,status");
    std::filesystem::remove(csv);
  }
}
