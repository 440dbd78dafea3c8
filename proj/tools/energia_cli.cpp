// Command-line front end: single classifications as JSON lines, parameter
// scans as CSV, with config-file defaults (ENERGIA_CONFIG or --config).
// Exit codes: 0 success, 2 input error, 3 symbolic/numeric oracle
// disagreement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "energia/energia.hpp"

namespace {

using namespace energia;
using nlohmann::json;

class OracleDisagreement : public std::runtime_error {
public:
    explicit OracleDisagreement(const std::string& what) : std::runtime_error(what) {}
};

struct ScanRange {
    double from = 0.0, to = 0.0, step = 0.0;
};

ScanRange parse_range(const std::string& spec) {
    ScanRange r;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> r.from >> c1 >> r.to >> c2 >> r.step) || c1 != ':' || c2 != ':' ||
        !(r.step > 0.0) || !(r.to >= r.from))
        throw std::invalid_argument("bad scan range \"" + spec + "\", expected from:to:step");
    return r;
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw std::runtime_error("cannot open output file " + path);
        stream = file.get();
    }
    std::ostream& out() { return *stream; }
};

void emit_record(Output& out, const Record& r) { out.out() << to_json(r).dump() << '\n'; }

void check_verdicts_agree(const ConvergenceVerdict& symbolic, const ConvergenceVerdict& numeric,
                          const std::string& what) {
    if (symbolic.converges != numeric.converges)
        throw OracleDisagreement(what + ": symbolic and numeric verdicts disagree");
    if (symbolic.converges && symbolic.value && numeric.value) {
        const double rel = std::abs(*symbolic.value - *numeric.value) /
                           std::max(std::abs(*symbolic.value), 1e-300);
        if (rel > 1e-6)
            throw OracleDisagreement(what + ": symbolic and numeric values disagree");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"finite pluricomplex energy threshold classifier"};
    app.require_subcommand(1);
    app.fallthrough();  // allow the global options after a subcommand name

    std::string out_path, format = "json", config_path;
    app.add_option("--out", out_path, "write records to this file instead of stdout");
    app.add_option("--format", format, "json (lines) or csv (scans)")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config_path, "config file (default: $ENERGIA_CONFIG)");
    double cli_tol = 0.0;
    int cli_panels = 0, cli_grid = 0;
    auto* tol_opt = app.add_option("--tol", cli_tol, "quadrature relative tolerance");
    auto* panels_opt = app.add_option("--panels", cli_panels, "tail panel budget");
    auto* grid_opt = app.add_option("--grid", cli_grid, "transform grid size");

    // classify-integral
    auto* ci = app.add_subcommand("classify-integral",
                                  "classify c * t^a (log t)^b at infinity or zero");
    double ci_a = 0, ci_b = 0, ci_loglog = 0, ci_lower = 2.0, ci_upper = 0.5, ci_coeff = 1.0;
    bool ci_at_zero = false;
    ci->add_option("--a", ci_a, "power exponent")->required();
    ci->add_option("--b", ci_b, "log exponent");
    ci->add_option("--loglog", ci_loglog, "iterated-log exponent (must be 0)");
    ci->add_option("--coeff", ci_coeff, "positive coefficient");
    ci->add_option("--lower", ci_lower, "lower endpoint for tails");
    ci->add_option("--upper", ci_upper, "upper endpoint for (0,u] integrals");
    ci->add_flag("--at-zero", ci_at_zero, "classify near 0 instead of infinity");

    // radial
    auto* radial = app.add_subcommand("radial", "radial measure classifiers");
    radial->require_subcommand(1);
    int r_n = 1;
    double r_p = 0.5, r_gamma = 0.0, r_q = 1.0;
    std::string r_weight;
    bool r_verify = false;
    auto* rc = radial->add_subcommand("classify", "finite-energy test");
    rc->add_option("--n", r_n, "complex dimension")->required();
    rc->add_option("--p", r_p, "power-log exponent");
    rc->add_option("--weight", r_weight, "sampled weight file (s chi)");
    rc->add_flag("--verify", r_verify, "cross-check against the numeric oracle");
    auto* rd = radial->add_subcommand("dirichlet", "one-dimensional Sobolev test");
    rd->add_option("--p", r_p, "power-log exponent");
    rd->add_option("--weight", r_weight, "sampled weight file (s chi)");
    auto* rl = radial->add_subcommand("lp", "integrability of (-log|z|)^gamma against the measure");
    rl->add_option("--n", r_n)->required();
    rl->add_option("--p", r_p)->required();
    rl->add_option("--gamma", r_gamma)->required();
    rl->add_option("--q", r_q)->required();
    auto* rp = radial->add_subcommand("perturb", "weight absorbing a log-power density factor");
    rp->add_option("--n", r_n)->required();
    rp->add_option("--p", r_p)->required();
    rp->add_option("--gamma", r_gamma)->required();

    // toric
    auto* toric = app.add_subcommand("toric", "toric beta-family classifiers");
    double t_beta = 0.4, t_q = 1.0, t_C = 1.0;
    std::string t_scan, t_op = "energy";
    auto* t_beta_opt = toric->add_option("--beta", t_beta, "family parameter in (0,1)");
    toric->add_option("--q", t_q, "energy/moment order");
    toric->add_option("--C", t_C, "family constant");
    toric->add_option("--op", t_op, "energy or moment")
        ->check(CLI::IsMember({"energy", "moment"}));
    toric->add_option("--scan-beta", t_scan, "scan range from:to:step");

    // divisorial
    auto* divisorial = app.add_subcommand("divisorial", "divisorial density classifiers");
    double d_alpha = 1.0, d_bound = 1.0, d_p = 0.4;
    int d_components = 1;
    std::string d_scan;
    divisorial->add_option("--scan-alpha", d_scan, "scan range from:to:step");
    auto add_divisorial_sub = [&](const char* name, const char* desc, bool needs_alpha) {
        auto* sub = divisorial->add_subcommand(name, desc);
        if (needs_alpha) {
            sub->add_option("--alpha", d_alpha)->required();
            sub->add_option("--components", d_components);
            sub->add_option("--bound", d_bound);
        }
        return sub;
    };
    auto* dc = add_divisorial_sub("classify", "finite-energy test (alpha > 1/2)", true);
    auto* dm = add_divisorial_sub("mass", "per-factor mass 1/alpha with h-bounds", true);
    auto* de = add_divisorial_sub("entropy", "entropy test (alpha > 1)", true);
    auto* dp = add_divisorial_sub("pairing", "critical pairing test", true);
    auto* db = add_divisorial_sub("barrier", "transverse barrier energy", false);
    db->add_option("--p", d_p, "barrier exponent in (0,1)")->required();

    // blowup
    auto* blowup = app.add_subcommand("blowup", "blow-up counterexample pairing");
    double b_delta = 0.05, b_delta_prime = 0.05;
    int b_steps = 100;
    bool b_scan = false;
    auto* b_delta_opt = blowup->add_option("--delta", b_delta, "p = 1/2 - delta");
    blowup->add_option("--delta-prime", b_delta_prime, "eps = 2/3 - delta'");
    blowup->add_flag("--scan", b_scan, "emit the divergence region as CSV");
    blowup->add_option("--steps", b_steps, "scan resolution per axis");

    // legendre
    auto* legendre = app.add_subcommand("legendre", "Legendre transform of a sampled function");
    std::string l_input, l_output;
    legendre->add_option("--input", l_input, "two-column input file")->required();
    legendre->add_option("--output", l_output, "output file (default stdout)");

    // generic scan
    auto* scan = app.add_subcommand("scan", "parameter scan over a module threshold");
    std::string s_module, s_param;
    double s_from = 0, s_to = 0, s_step = 0, s_q = 1.0;
    int s_n = 2;
    scan->add_option("--module", s_module)->required()->check(
        CLI::IsMember({"radial", "toric", "divisorial"}));
    scan->add_option("--param", s_param)->required();
    scan->add_option("--from", s_from)->required();
    scan->add_option("--to", s_to)->required();
    scan->add_option("--step", s_step)->required();
    scan->add_option("--n", s_n, "dimension (radial)");
    scan->add_option("--q", s_q, "order (toric)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    if (config_path.empty()) {
        if (const char* env = std::getenv("ENERGIA_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (tol_opt->count() > 0) cfg.tol = cli_tol;
    if (panels_opt->count() > 0) cfg.panels = cli_panels;
    if (grid_opt->count() > 0) cfg.grid = cli_grid;
    const QuadratureOptions quad{cfg.tol, cfg.panels};

    Output out;
    out.open(out_path);
    const bool csv = format == "csv";

    if (*ci) {
        if (ci_loglog != 0.0)
            throw UnsupportedForm(
                "iterated-log integrands are outside the supported t^a (log t)^b class");
        const LogPowerTerm term(ci_coeff, ci_a, ci_b);
        const auto verdict = ci_at_zero ? classify_at_zero(term, ci_upper, quad)
                                        : classify_at_infinity(term, ci_lower, quad);
        const bool closed_form = (ci_b == 0.0) || (ci_a == -1.0);
        emit_record(out, {"logpow-calculus",
                          ci_at_zero ? "classify_at_zero" : "classify_at_infinity",
                          json{{"coeff", ci_coeff}, {"a", ci_a}, {"b", ci_b}},
                          verdict,
                          verdict.converges && !closed_form ? "numeric" : "symbolic",
                          "power-log convergence dichotomy"});
        return 0;
    }

    if (*radial) {
        const bool from_file = !r_weight.empty();
        auto weight = [&] {
            return from_file ? RadialWeight::load(r_weight) : RadialWeight::power_log(r_p);
        }();
        json params{{"n", r_n}};
        if (from_file)
            params["weight"] = r_weight;
        else
            params["p"] = r_p;
        if (*rc) {
            const auto verdict = classify_energy(weight, r_n, quad);
            if (r_verify && !from_file) {
                const double p = r_p;
                const double a = (r_n + 1.0) * r_p - r_n - 1.0;
                if (std::abs(a + 1.0) > 0.02) {
                    const double coeff = std::pow(p, r_n) * (1.0 - p);
                    const auto numeric = empirical_convergence(
                        [&](double u) { return coeff * std::pow(u, a); }, 1.0, cfg.panels);
                    check_verdicts_agree(verdict, numeric, "radial classify");
                }
            }
            params["threshold"] = static_cast<double>(r_n) / (r_n + 1.0);
            emit_record(out, {"radial-energy", "classify_energy", params, verdict, "symbolic",
                              "radial threshold p < n/(n+1)"});
        } else if (*rd) {
            emit_record(out, {"radial-energy", "dirichlet_energy", params,
                              dirichlet_energy(weight, quad), "symbolic",
                              "dimension-one Sobolev criterion"});
        } else if (*rl) {
            params["gamma"] = r_gamma;
            params["q"] = r_q;
            emit_record(out, {"radial-energy", "lp_membership", params,
                              lp_membership(r_gamma, weight, r_n, r_q, quad), "symbolic",
                              "L^p property counterexample"});
        } else if (*rp) {
            const auto shifted = perturbed_weight(r_gamma, weight, r_n);
            params["gamma"] = r_gamma;
            params["p_perturbed"] = shifted.p();
            emit_record(out, {"radial-energy", "perturbed_weight", params,
                              classify_energy(shifted, r_n, quad), "symbolic",
                              "log-power density absorption"});
        }
        return 0;
    }

    if (*toric) {
        auto classify_one = [&](double beta) {
            ToricModel model = make_beta_model(beta, t_C);
            return t_op == "moment" ? moment_integral(model, t_q)
                                    : classify_toric_energy(model, t_q);
        };
        if (!t_scan.empty()) {
            const ScanRange r = parse_range(t_scan);
            if (csv) out.out() << "beta,betaStar,verdict,value\n";
            for (double beta = r.from; beta <= r.to + 1e-12; beta += r.step) {
                const auto verdict = classify_one(beta);
                if (csv) {
                    out.out() << beta << ',' << beta_star(beta) << ','
                              << verdict_name(verdict) << ',';
                    if (verdict.value) out.out() << *verdict.value;
                    out.out() << '\n';
                } else {
                    json j{{"beta", beta}, {"betaStar", beta_star(beta)},
                           {"verdict", verdict_name(verdict)}};
                    if (verdict.value) j["value"] = *verdict.value;
                    out.out() << j.dump() << '\n';
                }
            }
            return 0;
        }
        if (t_beta_opt->count() == 0)
            throw std::invalid_argument("toric: need --beta or --scan-beta");
        const auto verdict = classify_one(t_beta);
        emit_record(out, {"toric-energy",
                          t_op == "moment" ? "moment_integral" : "classify_toric_energy",
                          json{{"beta", t_beta}, {"betaStar", beta_star(t_beta)}, {"q", t_q}},
                          verdict, "symbolic", "toric threshold beta < 1/2"});
        return 0;
    }

    if (*divisorial) {
        if (!d_scan.empty()) {
            const ScanRange r = parse_range(d_scan);
            if (csv) out.out() << "alpha,verdict,value\n";
            for (double alpha = r.from; alpha <= r.to + 1e-12; alpha += r.step) {
                const DivisorialDensity dens(1, alpha);
                const auto verdict = classify(dens, quad).verdict;
                if (csv) {
                    out.out() << alpha << ',' << verdict_name(verdict) << ',';
                    if (verdict.value) out.out() << *verdict.value;
                    out.out() << '\n';
                } else {
                    emit_record(out, {"divisorial-energy", "classify", json{{"alpha", alpha}},
                                      verdict, "symbolic", "divisorial threshold alpha > 1/2"});
                }
            }
            return 0;
        }
        if (*db) {
            emit_record(out, {"divisorial-energy", "barrier_energy", json{{"p", d_p}},
                              barrier_energy(d_p, quad), "symbolic",
                              "transverse barrier threshold p < 1/2"});
            return 0;
        }
        const DivisorialDensity dens(d_components, d_alpha, d_bound);
        const json params{{"alpha", d_alpha}, {"components", d_components}, {"bound", d_bound}};
        if (*dc) {
            const auto result = classify(dens, quad);
            json p2 = params;
            if (result.barrier_window)
                p2["barrier_window"] =
                    json::array({result.barrier_window->first, result.barrier_window->second});
            emit_record(out, {"divisorial-energy", "classify", p2, result.verdict, "symbolic",
                              "divisorial threshold alpha > 1/2"});
        } else if (*dm) {
            const auto mass = mass_integral(dens, quad);
            json p2 = params;
            p2["total_lower"] = mass.total_lower;
            p2["total_upper"] = mass.total_upper;
            emit_record(out, {"divisorial-energy", "mass_integral", p2, mass.verdict, "symbolic",
                              "per-factor mass 1/alpha"});
        } else if (*de) {
            emit_record(out, {"divisorial-energy", "entropy_integral", params,
                              entropy_integral(dens, quad), "symbolic",
                              "entropy threshold alpha > 1"});
        } else if (*dp) {
            emit_record(out, {"divisorial-energy", "critical_pairing", params,
                              critical_pairing(dens, quad), "symbolic",
                              "critical pairing against the square-root log weight"});
        }
        return 0;
    }

    if (*blowup) {
        if (b_scan) {
            out.out() << "delta,delta_prime,log_exponent,verdict\n";
            for (int i = 1; i <= b_steps; ++i) {
                for (int j = 1; j <= b_steps; ++j) {
                    const double delta = 0.5 * i / (b_steps + 1);
                    const double dprime = (2.0 / 3.0) * j / (b_steps + 1);
                    const BlowupScenario scn(delta, dprime);
                    out.out() << delta << ',' << dprime << ',' << scn.log_exponent() << ','
                              << verdict_name(pairing_integral(scn, quad)) << '\n';
                }
            }
            return 0;
        }
        if (b_delta_opt->count() == 0)
            throw std::invalid_argument("blowup: need --delta/--delta-prime or --scan");
        const BlowupScenario scn(b_delta, b_delta_prime);
        const auto report = scenario_report(scn, quad);
        json j = to_json({"bimero-invariance", "pairing_integral",
                          json{{"delta", b_delta}, {"delta_prime", b_delta_prime},
                               {"p", report.p}, {"epsilon", report.epsilon},
                               {"log_exponent", report.log_exponent}},
                          report.pairing, "symbolic",
                          "non-invariance under bimeromorphic maps"});
        json cited = json::array();
        for (const auto& fact : report.cited)
            cited.push_back({{"statement", fact.statement}, {"source", fact.source}});
        j["cited"] = cited;
        if (report.conclusion) j["conclusion"] = *report.conclusion;
        out.out() << j.dump() << '\n';
        return 0;
    }

    if (*legendre) {
        const auto f = SampledConvexFunction::load(l_input);
        const auto fstar = legendre_transform(f, cfg.grid);
        if (l_output.empty())
            fstar.save(out.out());
        else
            fstar.save(l_output);
        return 0;
    }

    if (*scan) {
        if (csv) out.out() << s_param << ",verdict,value\n";
        for (double x = s_from; x <= s_to + 1e-12; x += s_step) {
            ConvergenceVerdict verdict;
            if (s_module == "radial") {
                if (s_param != "p") throw std::invalid_argument("radial scan: param must be p");
                verdict = classify_energy(RadialWeight::power_log(x), s_n, quad);
            } else if (s_module == "toric") {
                if (s_param != "beta")
                    throw std::invalid_argument("toric scan: param must be beta");
                verdict = classify_toric_energy(make_beta_model(x), s_q);
            } else {
                if (s_param != "alpha")
                    throw std::invalid_argument("divisorial scan: param must be alpha");
                verdict = classify(DivisorialDensity(1, x), quad).verdict;
            }
            if (csv) {
                out.out() << x << ',' << verdict_name(verdict) << ',';
                if (verdict.value) out.out() << *verdict.value;
                out.out() << '\n';
            } else {
                emit_record(out, {s_module, "scan", json{{s_param, x}}, verdict, "symbolic",
                                  "threshold scan"});
            }
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const OracleDisagreement& e) {
        std::cerr << "oracle disagreement: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
