#pragma once

// The two-parameter blow-up counterexample family: pairing a potential
// with transverse exponent p = 1/2 - delta against a weight of exponent
// eps = 2/3 - delta'. The geometry reduces to the one-dimensional integral
// of 1 / (rho (-log rho)^{2-p-eps}) over (0, 1/2], which diverges exactly
// when 2 - p - eps <= 1, i.e. delta + delta' <= 1/6. Facts that rest on
// the surrounding geometry rather than this integral are reported with
// source "cited", never as computed results.

#include <optional>
#include <string>
#include <vector>

#include "energia/logpow.hpp"
#include "energia/verdict.hpp"

namespace energia {

class BlowupScenario {
public:
    BlowupScenario(double delta, double delta_prime) : delta_(delta), delta_prime_(delta_prime) {
        if (!(delta > 0.0) || !(delta < 0.5))
            throw std::invalid_argument("BlowupScenario: delta must lie in (0, 1/2)");
        if (!(delta_prime > 0.0) || !(delta_prime < 2.0 / 3.0))
            throw std::invalid_argument("BlowupScenario: delta' must lie in (0, 2/3)");
    }

    double delta() const { return delta_; }
    double delta_prime() const { return delta_prime_; }
    double p() const { return 0.5 - delta_; }
    double epsilon() const { return 2.0 / 3.0 - delta_prime_; }
    /// The log exponent 2 - p - eps = 5/6 + delta + delta' of the decisive
    /// integral.
    double log_exponent() const { return 2.0 - p() - epsilon(); }

private:
    double delta_;
    double delta_prime_;
};

/// Reduces the pairing integrand (weight times density times polar volume)
/// to its one-dimensional term rho^{-1} (-log rho)^{-(2-p-eps)} near
/// rho = 0. The positive geometric constant stays symbolic.
inline LogPowerTerm density_reduction(const BlowupScenario& scn) {
    return LogPowerTerm(1.0, -1.0, -scn.log_exponent());
}

/// Classifies the decisive integral over (0, 1/2]. Diverges exactly when
/// delta + delta' <= 1/6.
inline ConvergenceVerdict pairing_integral(const BlowupScenario& scn,
                                           const QuadratureOptions& opt = {}) {
    return classify_at_zero(density_reduction(scn), 0.5, opt);
}

/// A statement taken from the literature rather than computed here.
struct CitedFact {
    std::string statement;
    std::string source;  // always "cited"
};

struct ScenarioReport {
    double delta = 0.0;
    double delta_prime = 0.0;
    double p = 0.0;
    double epsilon = 0.0;
    double log_exponent = 0.0;
    ConvergenceVerdict pairing;
    std::vector<CitedFact> cited;
    // present only when the pairing diverges
    std::optional<std::string> conclusion;
};

/// Computed verdict plus the cited facts needed to read it as a
/// non-invariance statement. Computed and cited facts carry distinct
/// provenance and are never mixed.
inline ScenarioReport scenario_report(const BlowupScenario& scn,
                                      const QuadratureOptions& opt = {}) {
    ScenarioReport report;
    report.delta = scn.delta();
    report.delta_prime = scn.delta_prime();
    report.p = scn.p();
    report.epsilon = scn.epsilon();
    report.log_exponent = scn.log_exponent();
    report.pairing = pairing_integral(scn, opt);
    report.cited = {
        {"the measure built from the transverse exponent p lies in MA(E^1) "
         "for the blown-up Kahler class",
         "cited"},
        {"the test potential with exponent eps has finite energy for the "
         "pulled-back Fubini-Study class but not for the blown-up Kahler class",
         "cited"},
    };
    if (!report.pairing.converges)
        report.conclusion = "not in MA(E^1) for the pulled-back Fubini-Study class";
    return report;
}

}  // namespace energia
