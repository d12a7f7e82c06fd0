#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "muskat/cli.hpp"
#include "muskat/run_io.hpp"
#include "muskat/sim_config.hpp"

using namespace muskat;
namespace fs = std::filesystem;

namespace {

const char* kMinimalConfig = R"(
# minimal periodic run
[scenario]
kind = periodic_touching_bump
epsilon = 0.05
)";

fs::path temp_dir(const char* tag) {
    const fs::path p = fs::temp_directory_path() / (std::string("muskat-test-") + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("config_io");

TEST_CASE("minimal config parses with documented defaults") {
    const SimConfig cfg = parse_config(kMinimalConfig);
    CHECK(cfg.scenario.kind == ScenarioKind::PeriodicTouchingBump);
    CHECK(cfg.scenario.epsilon == 0.05);
    CHECK(cfg.scenario.nu == 1.0);
    CHECK(cfg.n == 256);
    CHECK(cfg.params.t_end == 1.0);
    CHECK(cfg.params.record_every == 10);
    CHECK(cfg.params.gamma_prime == 0.5);
    CHECK(cfg.params.rhs.threads == 1);
    CHECK(cfg.params.rhs.h_floor_factor == 10.0);
}

TEST_CASE("unknown keys are fatal in strict mode") {
    const std::string text = std::string(kMinimalConfig) + "\n[grid]\nn = 128\nm = 3\n";
    CHECK_THROWS_AS(parse_config(text), ConfigError);
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("unknown key [grid] m") != std::string::npos);
    }
}

TEST_CASE("all violations are reported together") {
    const char* text = R"(
[scenario]
kind = periodic_touching_bump
epsilon = 0.05
[grid]
n = 4
[time]
cfl_cap = 2.0
rtol = -1
[output]
gamma_prime = 3
)";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems().size() >= 3);  // grid, time, gamma all reported at once
    }
}

TEST_CASE("slope-bound violation is reported with the 3/10 rule") {
    const char* text = R"(
[scenario]
kind = periodic_touching_bump
epsilon = 0.5
)";
    try {
        parse_config(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.problems().size() == 1);
        CHECK(e.problems()[0].find("3/10") != std::string::npos);
    }
}

TEST_CASE("empty input reports a missing scenario") {
    try {
        parse_config("");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems()[0].find("missing scenario") != std::string::npos);
    }
}

TEST_CASE("diagnostics csv header and round trip") {
    std::vector<DiagnosticsRecord> recs(2);
    recs[0].t = 0.0;
    recs[0].max_slope = 0.3;
    recs[0].l1_mass = 1.0 / 3.0;
    recs[0].lambda_dissipation = 0.125;
    recs[1].t = 0.1;
    recs[1].ln_dissipation = 0.25;  // plane-style record: lambda stays empty
    recs[1].blowup_accumulator = 7e-3;
    const std::string csv = diagnostics_to_csv(recs);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "t,max_slope,l1_mass,l2_energy,lambda_dissipation,ln_dissipation,"
          "min_height,holder_fxx,blowup_accumulator");
    const auto back = diagnostics_from_csv(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[0].l1_mass == recs[0].l1_mass);  // bit-exact through %.17g
    CHECK(back[0].lambda_dissipation.has_value());
    CHECK_FALSE(back[0].ln_dissipation.has_value());
    CHECK_FALSE(back[1].lambda_dissipation.has_value());
    CHECK(*back[1].ln_dissipation == 0.25);
}

TEST_CASE("truncated csv reports the offending row") {
    const char* text =
        "t,max_slope,l1_mass,l2_energy,lambda_dissipation,ln_dissipation,"
        "min_height,holder_fxx,blowup_accumulator\n"
        "0,0.1,1,1,0,,0,0,0\n"
        "0.1,0.2,1,1\n";
    try {
        diagnostics_from_csv(text);
        FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    CHECK_THROWS(diagnostics_from_csv("wrong,header\n1,2\n"));
}

TEST_CASE("summary json round trip") {
    RunSummary s;
    s.termination = "completed";
    s.t_final = 1.0;
    s.records_count = 12;
    s.max_slope_monotone = true;
    s.mass_drift = 1e-12;
    s.blowup_accumulator_final = 0.5;
    const auto back = summary_from_json(summary_to_json(s));
    CHECK(back.schema_version == 1);
    CHECK(back.termination == "completed");
    CHECK(back.records_count == 12);
    CHECK(back.max_slope_monotone);
    CHECK(back.mass_drift == s.mass_drift);
}

TEST_CASE("simulate writes a complete run directory and diagnose re-checks it") {
    const fs::path dir = temp_dir("simulate");
    const fs::path cfgpath = dir / "run.cfg";
    {
        std::ofstream out(cfgpath);
        out << "[scenario]\nkind = periodic_touching_bump\nepsilon = 0.05\n"
            << "[grid]\nn = 64\n[time]\nt_end = 0.01\ndt_init = 1e-3\n"
            << "[output]\nrecord_every = 2\noutput_dir = " << (dir / "out").string()
            << "\n";
    }
    std::ostringstream log;
    const int code = cli::cmd_simulate(cfgpath.string(), "", true, log);
    CHECK(code == 0);
    CHECK(fs::exists(dir / "out" / "diagnostics.csv"));
    CHECK(fs::exists(dir / "out" / "summary.json"));
    CHECK(fs::exists(dir / "out" / "snapshots" / "0000.json"));
    const auto summary =
        summary_from_json(read_file((dir / "out" / "summary.json").string()));
    CHECK(summary.termination == "completed");
    CHECK(summary.records_count >= 2);

    std::ostringstream diag;
    CHECK(cli::cmd_diagnose((dir / "out").string(), diag) == 0);
    CHECK(diag.str().find("slope_monotone") != std::string::npos);
    CHECK(diag.str().find("singularity_time_bound") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("simulate with an unwritable output path fails cleanly") {
    const fs::path dir = temp_dir("badout");
    const fs::path cfgpath = dir / "run.cfg";
    {
        std::ofstream out(cfgpath);
        out << "[scenario]\nkind = periodic_touching_bump\nepsilon = 0.05\n"
            << "[grid]\nn = 64\n[time]\nt_end = 0.01\n";
    }
    std::ostringstream log;
    const int code =
        cli::cmd_simulate(cfgpath.string(), "/proc/definitely/not/writable", true, log);
    CHECK(code != 0);
    CHECK_FALSE(fs::exists("/proc/definitely/not/writable/diagnostics.csv"));
    fs::remove_all(dir);
}

TEST_CASE("diagnose rejects a malformed run directory") {
    const fs::path dir = temp_dir("diagbad");
    write_file((dir / "diagnostics.csv").string(), "bogus\n");
    std::ostringstream log;
    CHECK(cli::cmd_diagnose(dir.string(), log) == 1);
    fs::remove_all(dir);
}

TEST_SUITE_END();
