// Acceptance gate: one check per headline threshold, one PASS/FAIL line
// each, nonzero exit when anything fails. A symbolic/numeric disagreement
// in the soundness criterion exits with code 3; any other failure with 1.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "energia/energia.hpp"

using namespace energia;

namespace {

struct Criterion {
    std::string name;
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& msg) {
        if (!ok && passed) {
            passed = false;
            detail << msg;
        }
    }
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// ---------------------------------------------------------------- radial

void radial_threshold(Criterion& c) {
    for (int n = 1; n <= 3; ++n) {
        const double threshold = static_cast<double>(n) / (n + 1.0);
        for (int i = 5; i <= 95; ++i) {
            const double p = i / 100.0;
            const auto v = classify_energy(RadialWeight::power_log(p), n);
            c.require(v.converges == (p < threshold - 1e-12),
                      "misclassified n=" + std::to_string(n) + " p=" + std::to_string(p));
            if (std::abs(p - threshold) < 0.05) continue;
            // quadrature oracle on the density profile in u = -s
            const double coeff = std::pow(p, n) * (1.0 - p);
            const double a = (n + 1.0) * p - n - 1.0;
            if (v.converges) {
                const double direct = integrate_tail(
                    [&](double u) { return coeff * std::pow(u, a); }, 1.0, 1e-8, 200);
                c.require(close_rel(direct, *v.value, 1e-6),
                          "oracle value mismatch at n=" + std::to_string(n) +
                              " p=" + std::to_string(p));
            } else {
                bool flagged = false;
                try {
                    integrate_tail([&](double u) { return coeff * std::pow(u, a); }, 1.0, 1e-8,
                                   60);
                } catch (const NonIntegrableSuspected&) {
                    flagged = true;
                }
                c.require(flagged, "oracle failed to flag divergence at n=" +
                                       std::to_string(n) + " p=" + std::to_string(p));
            }
        }
    }
}

RadialWeight mixture_weight(const std::vector<double>& coeffs,
                            const std::vector<double>& powers, int points = 2001) {
    double cp_sum = 0.0, p_max = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        cp_sum += coeffs[i] * powers[i];
        p_max = std::max(p_max, powers[i]);
    }
    const double u_max = std::pow(3.0 * cp_sum / 1e-6, 1.0 / (1.0 - p_max));
    std::vector<double> s, chi;
    for (int i = points; i-- > 0;) {
        const double u = std::exp(std::log(u_max) * static_cast<double>(i) / (points - 1));
        double value = 0.0;
        for (std::size_t k = 0; k < powers.size(); ++k)
            value -= coeffs[k] * std::pow(u, powers[k]);
        s.push_back(-u);
        chi.push_back(value);
    }
    return RadialWeight::sampled(std::move(s), std::move(chi));
}

void dimension_one_equivalence(Criterion& c) {
    for (int i = 5; i <= 95; ++i) {
        const auto w = RadialWeight::power_log(i / 100.0);
        c.require(dirichlet_energy(w).converges == classify_energy(w, 1).converges,
                  "power-log verdict split at p=" + std::to_string(i / 100.0));
    }
    std::mt19937 rng(48102);
    std::uniform_real_distribution<double> coeff(0.25, 2.0);
    std::uniform_real_distribution<double> low_p(0.1, 0.4);
    for (int rep = 0; rep < 20; ++rep) {
        // dominant exponent kept away from the 1/2 boundary
        const double p_hi = (rep % 2 == 0) ? 0.1 + 0.3 * (rep / 19.0)
                                           : 0.56 + 0.24 * (rep / 19.0);
        const double p_lo = low_p(rng) * p_hi / 0.4;
        const auto w = mixture_weight({coeff(rng), coeff(rng)}, {p_lo, p_hi});
        const auto d = dirichlet_energy(w);
        const auto e = classify_energy(w, 1);
        c.require(d.converges == e.converges,
                  "sampled mixture verdict split, dominant p=" + std::to_string(p_hi));
        c.require(d.converges == (p_hi < 0.5),
                  "sampled mixture misclassified, dominant p=" + std::to_string(p_hi));
    }
}

void lp_counterexample(Criterion& c) {
    {
        const auto w = RadialWeight::power_log(1.0 / 3.0);
        c.require(lp_membership(2.0 / 3.0, w, 2, 1.5).converges, "n=2 membership failed");
        const auto shifted = perturbed_weight(2.0 / 3.0, w, 2);
        c.require(std::abs(shifted.p() - 2.0 / 3.0) < 1e-12, "n=2 perturbed exponent wrong");
        c.require(!classify_energy(shifted, 2).converges, "n=2 perturbed energy not infinite");
    }
    {
        const auto w = RadialWeight::power_log(0.5);
        c.require(lp_membership(0.75, w, 3, 4.0 / 3.0).converges, "n=3 membership failed");
        const auto shifted = perturbed_weight(0.75, w, 3);
        c.require(std::abs(shifted.p() - 0.75) < 1e-12, "n=3 perturbed exponent wrong");
        c.require(!classify_energy(shifted, 3).converges, "n=3 perturbed energy not infinite");
    }
}

// ------------------------------------------------------------- transform

double soft_abs(double x) {
    return x > 0.0 ? x + 0.5 * std::log1p(std::exp(-2.0 * x))
                   : 0.5 * std::log1p(std::exp(2.0 * x));
}

void legendre_correctness(Criterion& c) {
    std::vector<double> x, v;
    for (int i = 0; i < 2001; ++i) {
        const double xi = -1.0 + 2.0 * i / 2000.0;
        x.push_back(xi);
        v.push_back(0.5 * xi * xi);
    }
    const SampledConvexFunction quadratic(x, v);
    const auto qstar = legendre_transform(quadratic, 2001);
    double worst = 0.0;
    for (std::size_t i = 0; i < qstar.grid().size(); ++i) {
        const double p = qstar.grid()[i];
        worst = std::max(worst, std::abs(qstar.values()[i] - 0.5 * p * p));
    }
    c.require(worst <= 5e-5, "quadratic self-duality error " + std::to_string(worst));

    const auto q2 = biconjugate(quadratic);
    worst = 0.0;
    for (std::size_t i = 0; i < q2.grid().size(); ++i)
        worst = std::max(worst, std::abs(q2.values()[i] - quadratic.values()[i]));
    c.require(worst <= 1e-4, "biconjugate error " + std::to_string(worst));

    std::vector<double> sx, sv;
    for (int i = 0; i < 2001; ++i) {
        const double xi = -20.0 + 40.0 * i / 2000.0;
        sx.push_back(xi);
        sv.push_back(soft_abs(xi));
    }
    const SampledConvexFunction smoothed(std::move(sx), std::move(sv));
    const Interval img = subgradient_image(smoothed);
    c.require(std::abs(img.lo - 0.0) <= 1e-6 && std::abs(img.hi - 1.0) <= 1e-6,
              "subgradient image not [0,1]");

    std::vector<double> slopes;
    for (int i = 0; i <= 200; ++i) slopes.push_back(img.lo + (img.hi - img.lo) * i / 200.0);
    const auto fstar = legendre_transform(smoothed, slopes);
    worst = 0.0;
    for (std::size_t k = 0; k < slopes.size(); ++k) {
        double sup = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100000; ++i) {
            const double xx = -20.0 + 40.0 * i / 99999.0;
            sup = std::max(sup, xx * slopes[k] - soft_abs(xx));
        }
        worst = std::max(worst, std::abs(fstar.values()[k] - sup));
    }
    c.require(worst <= 1e-4, "brute-force sup oracle mismatch " + std::to_string(worst));
}

// ----------------------------------------------------------------- toric

void toric_threshold(Criterion& c) {
    for (int i = 1; i <= 19; ++i) {
        const double beta = i / 20.0;
        const auto model = make_beta_model(beta);
        const auto energy = classify_toric_energy(model, 1.0);
        c.require(energy.converges == (beta < 0.5),
                  "energy verdict wrong at beta=" + std::to_string(beta));
        c.require(!moment_integral(model, 1.0).converges,
                  "first moment unexpectedly finite at beta=" + std::to_string(beta));
        c.require(moment_integral(model, 0.5).converges == energy.converges,
                  "half moment disagrees with energy at beta=" + std::to_string(beta));

        // conjugate of the normalized family is p^{-beta*} exactly
        const double C = std::pow(1.0 - beta, beta - 1.0) * std::pow(beta, -beta);
        const auto normalized = make_beta_model(beta, C, 8001);
        std::vector<double> pgrid;
        for (int k = 0; k <= 98; ++k) pgrid.push_back(0.01 + 0.98 * k / 98.0);
        const double err = beta_conjugate_max_relerr(normalized, pgrid);
        c.require(err <= 1e-3, "conjugate mismatch " + std::to_string(err) +
                                   " at beta=" + std::to_string(beta));
    }
}

void sobolev_chain(Criterion& c) {
    const double q21 = sobolev_exponent(1.0, 2);
    const double q31 = sobolev_exponent(1.0, 3);
    const double q32 = sobolev_exponent(2.0, 3);
    c.require(q21 == 2.0 && q31 == 1.5 && q32 == 6.0, "critical exponents wrong");

    std::vector<RadialProfile> profiles;
    for (double alpha : {0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0})
        profiles.push_back({[alpha](double r) { return std::pow(r, alpha) - 1.0; },
                            [alpha](double r) { return alpha * std::pow(r, alpha - 1.0); },
                            "power"});
    profiles.push_back(
        {[](double r) { return std::log(r); }, [](double r) { return 1.0 / r; }, "log"});
    profiles.push_back({[](double r) { return std::exp(r) - std::exp(1.0); },
                        [](double r) { return std::exp(r); }, "exp"});
    profiles.push_back({[](double r) { return r * r + r - 2.0; },
                        [](double r) { return 2.0 * r + 1.0; }, "mixed"});

    for (auto [q, n] : std::vector<std::pair<double, int>>{{1.0, 2}, {1.0, 3}, {2.0, 3}}) {
        const auto report = sobolev_verify(q, n, profiles);
        c.require(std::isfinite(report.fitted_constant) && report.fitted_constant > 0.0,
                  "fitted constant degenerate");
        for (double r : report.ratios)
            c.require(r <= report.fitted_constant + 1e-12, "ratio above fitted constant");
    }
}

// ------------------------------------------------------------ divisorial

void divisorial_thresholds(Criterion& c) {
    for (int i = 1; i <= 40; ++i) {
        const double alpha = i / 20.0;
        const auto full = classify(DivisorialDensity(1, alpha));
        c.require(full.verdict.converges == (alpha > 0.5 + 1e-12),
                  "energy verdict wrong at alpha=" + std::to_string(alpha));
        const auto entropy = entropy_integral(DivisorialDensity(1, alpha));
        c.require(entropy.converges == (alpha > 1.0 + 1e-12),
                  "entropy verdict wrong at alpha=" + std::to_string(alpha));
        for (int n : {2, 3}) {
            for (double B : {10.0, 100.0}) {
                const DivisorialDensity d(n, alpha, B);
                c.require(classify(d).verdict.converges == full.verdict.converges &&
                              entropy_integral(d).converges == entropy.converges,
                          "verdict depends on N or B at alpha=" + std::to_string(alpha));
            }
        }
        const auto mass = mass_integral(DivisorialDensity(1, alpha));
        c.require(close_rel(mass.per_factor, 1.0 / alpha, 1e-12), "mass value wrong");
        c.require(close_rel(mass.per_factor,
                            integrate_tail([&](double s) { return std::pow(s, -1.0 - alpha); },
                                           1.0, 1e-8),
                            1e-6),
                  "mass disagrees with quadrature");
        if (full.verdict.converges && alpha > 0.55)
            c.require(
                close_rel(*full.verdict.value,
                          integrate_tail(
                              [&](double s) { return std::pow(s, -0.5 - alpha); }, 1.0, 1e-8),
                          1e-6) &&
                    close_rel(*full.verdict.value, 1.0 / (alpha - 0.5), 1e-9),
                "pairing value disagrees with quadrature");
        if (entropy.converges && alpha > 1.05)
            c.require(close_rel(*entropy.value,
                                integrate_tail(
                                    [&](double s) { return std::pow(s, -alpha); }, 1.0, 1e-8),
                                1e-6) &&
                          close_rel(*entropy.value, 1.0 / (alpha - 1.0), 1e-9),
                      "entropy value disagrees with quadrature");
    }
}

// --------------------------------------------------------------- blowup

void blowup_counterexample(Criterion& c) {
    for (int i = 1; i <= 100; ++i) {
        for (int j = 1; j <= 100; ++j) {
            const double delta = 0.5 * i / 101.0;
            const double dprime = (2.0 / 3.0) * j / 101.0;
            const auto v = pairing_integral(BlowupScenario(delta, dprime));
            c.require(v.converges == (delta + dprime > 1.0 / 6.0 + 1e-9),
                      "pairing verdict wrong at (" + std::to_string(delta) + "," +
                          std::to_string(dprime) + ")");
        }
    }
    std::mt19937 rng(33417);
    std::uniform_real_distribution<double> d1(1e-6, 0.5 - 1e-6);
    std::uniform_real_distribution<double> d2(1e-6, 2.0 / 3.0 - 1e-6);
    for (int k = 0; k < 1000; ++k) {
        const BlowupScenario scn(d1(rng), d2(rng));
        const auto term = density_reduction(scn);
        c.require(term.a == -1.0 &&
                      std::abs(term.b + 5.0 / 6.0 + scn.delta() + scn.delta_prime()) <= 1e-12,
                  "density reduction exponent drifted");
    }
    // empirical oracle off the boundary band
    int tested = 0;
    while (tested < 20) {
        const BlowupScenario scn(d1(rng), d2(rng));
        if (std::abs(scn.delta() + scn.delta_prime() - 1.0 / 6.0) < 0.02) continue;
        ++tested;
        const double lambda = scn.log_exponent();
        const auto empirical = empirical_convergence(
            [&](double t) { return std::pow(t, -1.0) * std::pow(std::log(t), -lambda); }, 2.0,
            300);
        c.require(empirical.converges == pairing_integral(scn).converges,
                  "empirical oracle disagrees at sum=" +
                      std::to_string(scn.delta() + scn.delta_prime()));
    }
}

// ------------------------------------------------------------- soundness

void classifier_soundness(Criterion& c, bool& disagreement) {
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> expo(-3.0, 1.0);
    int numeric_checks = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = expo(rng);
        const double b = expo(rng);
        const LogPowerTerm term(1.0, a, b);
        const auto v = classify_at_infinity(term, 2.0);

        const bool should = (a < -1.0 - 1e-9) || (std::abs(a + 1.0) <= 1e-9 && b < -1.0 - 1e-9);
        c.require(v.converges == should, "dichotomy violated");

        const auto vz = classify_at_zero(LogPowerTerm(1.0, a, b), 0.25);
        const auto vs =
            classify_at_infinity(substitute_to_infinity(LogPowerTerm(1.0, a, b)), 4.0);
        c.require(vz.converges == vs.converges, "substitution verdict split");
        if (vz.converges)
            c.require(close_rel(*vz.value, *vs.value, 1e-9), "substitution value split");

        // domination: shrinking both exponents preserves convergence
        if (v.converges) {
            const auto dominated =
                classify_at_infinity(LogPowerTerm(1.0, a - std::abs(expo(rng)), b), 2.0);
            c.require(dominated.converges, "domination monotonicity violated");
        }

        // independent quadrature in the log variable, off the boundary band
        if (v.converges && a < -1.05 && i % 4 == 0) {
            // summed over doubling panels so each adaptive call sees a
            // well-scaled piece; no ratio extrapolation involved
            const auto g = [&](double u) { return std::exp((a + 1.0) * u) * std::pow(u, b); };
            const double u0 = std::log(2.0);
            const double U = std::max(2.0 * u0, 200.0 / (-a - 1.0));
            double direct = 0.0;
            for (double lo = u0; lo < U; lo *= 2.0)
                direct += integrate_interval(g, lo, std::min(2.0 * lo, U), 1e-10);
            ++numeric_checks;
            if (!close_rel(direct, *v.value, 1e-6)) {
                disagreement = true;
                c.require(false, "symbolic/numeric value disagreement at a=" +
                                     std::to_string(a) + " b=" + std::to_string(b));
            }
        }
    }
    c.require(numeric_checks > 500, "numeric cross-checks did not run");
}

}  // namespace

int main() {
    bool disagreement = false;
    std::vector<Criterion> results;
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
        {"radial threshold p < n/(n+1) with quadrature oracle", radial_threshold},
        {"dimension-one equivalence of Dirichlet and energy verdicts",
         dimension_one_equivalence},
        {"log-weight integrability counterexample chain", lp_counterexample},
        {"Legendre transform correctness", legendre_correctness},
        {"toric beta family threshold and conjugate agreement", toric_threshold},
        {"critical Sobolev exponent chain", sobolev_chain},
        {"divisorial mass/entropy/pairing thresholds", divisorial_thresholds},
        {"blow-up pairing divergence region", blowup_counterexample},
        {"classifier soundness properties",
         [&disagreement](Criterion& c) { classifier_soundness(c, disagreement); }},
    };

    bool all_ok = true;
    for (const auto& [name, fn] : criteria) {
        Criterion c;
        c.name = name;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        all_ok = all_ok && c.passed;
        std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.passed) std::cout << "  [" << c.detail.str() << "]";
        std::cout << '\n';
    }
    if (disagreement) return 3;
    return all_ok ? 0 : 1;
}
