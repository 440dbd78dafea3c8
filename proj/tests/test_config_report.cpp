#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "energia/config.hpp"
#include "energia/report.hpp"

using namespace energia;
using Catch::Approx;

TEST_CASE("config defaults and parsing") {
    const RunConfig defaults;
    CHECK(defaults.tol == 1e-8);
    CHECK(defaults.panels == 60);
    CHECK(defaults.grid == 2001);

    std::istringstream in(
        "# quadrature settings\n"
        "[quadrature]\n"
        "tol = 1e-6\n"
        "panels=120\n"
        "\n"
        "grid = 4001\n");
    const RunConfig cfg = load_config(in);
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.panels == 120);
    CHECK(cfg.grid == 4001);
}

TEST_CASE("partial files keep the remaining defaults") {
    std::istringstream in("tol = 1e-10\n");
    const RunConfig cfg = load_config(in);
    CHECK(cfg.tol == 1e-10);
    CHECK(cfg.panels == 60);
    CHECK(cfg.grid == 2001);
}

TEST_CASE("malformed config lines report their line number") {
    std::istringstream missing_eq("tol = 1e-6\nnonsense\n");
    try {
        load_config(missing_eq);
        FAIL("expected ConfigParseError");
    } catch (const ConfigParseError& e) {
        CHECK(e.line() == 2);
    }

    std::istringstream unknown("speed = 11\n");
    CHECK_THROWS_AS(load_config(unknown), ConfigParseError);

    std::istringstream bad_value("panels = many\n");
    CHECK_THROWS_AS(load_config(bad_value), ConfigParseError);

    std::istringstream trailing("tol = 1e-6x\n");
    CHECK_THROWS_AS(load_config(trailing), ConfigParseError);

    std::istringstream negative("panels = -3\n");
    CHECK_THROWS_AS(load_config(negative), ConfigParseError);
}

TEST_CASE("records serialize verdicts with provenance") {
    Record rec{"radial-energy",
               "classify_energy",
               nlohmann::json{{"n", 2}, {"p", 0.6}},
               ConvergenceVerdict::converged(1.5),
               "symbolic",
               "radial threshold"};
    const auto j = to_json(rec);
    CHECK(j["module"] == "radial-energy");
    CHECK(j["operation"] == "classify_energy");
    CHECK(j["parameters"]["n"] == 2);
    CHECK(j["verdict"] == "Converges");
    CHECK(j["value"].get<double>() == Approx(1.5));
    CHECK(j["provenance"] == "symbolic");
    CHECK_FALSE(j.contains("rate"));

    rec.verdict = ConvergenceVerdict::diverged_power(0.25);
    const auto jd = to_json(rec);
    CHECK(jd["verdict"] == "Diverges");
    CHECK(jd["value"].is_null());
    CHECK(jd["rate"] == "PowerDivergence");
    CHECK(jd["rate_exponent"].get<double>() == Approx(0.25));

    rec.verdict = ConvergenceVerdict::diverged_log();
    CHECK(to_json(rec)["rate"] == "LogDivergence");
}

TEST_CASE("scan rows render as CSV") {
    CHECK(csv_header("beta") == "beta,verdict,value");
    CHECK(csv_header("alpha", {"window"}) == "alpha,verdict,value,window");

    ScanRow row{0.25, ConvergenceVerdict::converged(2.0), {{"window", "none"}}};
    CHECK(csv_row(row) == "0.25,Converges,2,none");

    ScanRow diverging{0.75, ConvergenceVerdict::diverged_log(), {}};
    CHECK(csv_row(diverging) == "0.75,Diverges,");
}
