#include "tunnel/run_config.hpp"
#include "tunnel/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace tunnel;

namespace fs = std::filesystem;

TEST_SUITE("config_csv") {
  TEST_CASE("defaults cover the study grid") {
    const RunConfig cfg;
    CHECK(cfg.e0_over_z3 == std::vector<double>{0.035, 0.04, 0.048, 0.055, 0.06});
    CHECK(cfg.gammas == std::vector<double>{0.2, 0.25, 0.33});
    CHECK(cfg.settings.dx == 0.1);
    CHECK(cfg.settings.dt == 0.01);
    CHECK(cfg.settings.detector_count == 6);
    CHECK_NOTHROW(cfg.validate());
  }

  TEST_CASE("INI parsing") {
    const RunConfig cfg = parse_config_text(
        "; comment\n"
        "[atom]\nZ = 2\n"
        "[sweep]\ne0_over_z3 = 0.04, 0.05\ngamma = 0.3\n"
        "[grid]\ndx = 0.05\n"
        "[propagation]\ndt = 0.005\nmode = delay\nrecord_stride = 4\n"
        "[output]\ndirectory = results\nsnapshot_times = -10, 0, 10\n");
    CHECK(cfg.settings.Z == 2.0);
    CHECK(cfg.e0_over_z3 == std::vector<double>{0.04, 0.05});
    CHECK(cfg.gammas == std::vector<double>{0.3});
    CHECK(cfg.settings.dx == 0.05);
    CHECK(cfg.settings.dt == 0.005);
    CHECK(cfg.settings.delay_only);
    CHECK(cfg.settings.record_stride == 4);
    CHECK(cfg.output_dir == fs::path("results"));
    CHECK(cfg.settings.snapshot_times == std::vector<double>{-10.0, 0.0, 10.0});
  }

  TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(parse_config_text("[grid]\nspacing = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[grid]\ndx = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[propagation]\nmode = sometimes\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[propagation]\nrecord_stride = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[grid\ndx = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("/nonexistent/tunnel.ini"), ConfigError);

    CHECK_THROWS_AS(parse_config_text("[sweep]\ngamma =\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\ne0_over_z3 = 0.08\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\ngamma = 1.5\n").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[atom]\nZ = -1\n").validate(), ConfigError);
  }

  TEST_CASE("sweep CSV round trip") {
    ObservableReport a;
    a.E0 = 0.048;
    a.gamma = 0.25;
    a.x_in = 2.0491588113196;
    a.x_exit = 7.783025093012928;
    a.tau_A = 1.0 / 3.0;
    a.tau_MT = 57.7;
    a.p0_method1 = 0.2242034242501;
    a.p0_method2 = 0.22654103502394868;
    a.p_fq = 4.77;
    a.tau_2 = -0.44785219276192184;
    a.tau_sub_1d = 6.88;
    a.status = "bound_violated";
    ObservableReport b = a;
    b.gamma = 0.2;
    b.p_fq = b.tau_2 = std::numeric_limits<double>::quiet_NaN();
    b.status = "error: a, b";

    const fs::path path = fs::temp_directory_path() / "tunnel_sweep_test.csv";
    write_sweep_csv(path, {a, b});
    const auto rows = read_sweep_csv(path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].gamma == 0.2);  // sorted by gamma first
    CHECK(std::isnan(rows[0].p_fq));
    CHECK(rows[0].status == "error: a; b");
    const ObservableReport& r = rows[1];
    for (auto [x, y] : {std::pair{r.E0, a.E0}, {r.x_in, a.x_in}, {r.x_exit, a.x_exit}, {r.tau_A, a.tau_A},
                        {r.tau_MT, a.tau_MT}, {r.p0_method1, a.p0_method1}, {r.p0_method2, a.p0_method2},
                        {r.p_fq, a.p_fq}, {r.tau_2, a.tau_2}, {r.tau_sub_1d, a.tau_sub_1d}})
      CHECK(x == y);
    CHECK(r.status == a.status);

    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "E0,gamma,x_in,x_exit,tau_A,tau_MT,p0_m1,p0_m2,p_fq,tau_2,tau_sub_1d,status");
    fs::remove(path);
  }

  TEST_CASE("appending creates the header once") {
    const fs::path path = fs::temp_directory_path() / "tunnel_append_test.csv";
    fs::remove(path);
    ObservableReport r;
    r.E0 = 0.04;
    r.gamma = 0.33;
    append_sweep_row(path, r);
    append_sweep_row(path, r);
    CHECK(read_sweep_csv(path).size() == 2);
    fs::remove(path);
  }

  TEST_CASE("trace file layout") {
    CHECK(trace_file_name(0.048, 0.25) == "trace_0.048_0.25.csv");
    DetectorRecord d0{1.0, {0.0, 0.1}, {0.5, 0.25}, {1.0, 2.0}};
    DetectorRecord d1{2.0, {0.0, 0.1}, {-0.5, 0.125}, {3.0, 4.0}};
    const fs::path path = fs::temp_directory_path() / "tunnel_trace_test.csv";
    write_trace_csv(path, {d0, d1});
    std::ifstream is(path);
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,j_0,rho_0,j_1,rho_1");
    std::getline(is, line);
    CHECK(line == "0,0.5,1,-0.5,3");
    std::getline(is, line);
    CHECK(line == "0.10000000000000001,0.25,2,0.125,4");
    fs::remove(path);
  }
}
