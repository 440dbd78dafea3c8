#pragma once

// Model densities along a simple normal crossing divisor:
// f = h / prod |s_j|^2 (-log|s_j|)^{1+alpha} with 1/B <= h <= B and the
// cutoff |s_j| <= 1/e. Everything reduces, factor by factor and after
// s = -log|s_j|, to power integrals on [1, inf): mass s^{-1-alpha},
// entropy s^{-alpha}, pairing against the critical weight s^{-1/2-alpha}.
// The decisive finite-energy test is the pairing against (-log|s|)^{1/2},
// which flips exactly at alpha = 1/2 with the endpoint divergent.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "energia/logpow.hpp"
#include "energia/verdict.hpp"

namespace energia {

class DivisorialDensity {
public:
    DivisorialDensity(int components, double alpha, double bound = 1.0)
        : components_(components), alpha_(alpha), bound_(bound) {
        if (components < 1)
            throw std::invalid_argument("DivisorialDensity: need at least one component");
        if (!(alpha > 0.0))
            throw std::invalid_argument(
                "DivisorialDensity: alpha must be positive (mass diverges otherwise)");
        if (!(bound >= 1.0))
            throw std::invalid_argument("DivisorialDensity: bound B must be >= 1");
    }

    int components() const { return components_; }
    double alpha() const { return alpha_; }
    double bound() const { return bound_; }

private:
    int components_;
    double alpha_;
    double bound_;
};

struct MassResult {
    ConvergenceVerdict verdict;
    double per_factor = 0.0;   // 1/alpha
    double total_lower = 0.0;  // h-bounds enter as an interval factor
    double total_upper = 0.0;
};

/// Total mass: per factor the integral of dr / (r (-log r)^{1+alpha}) over
/// (0, 1/e], which is 1/alpha. The bounded factor h contributes the
/// interval [1/B, B]; the smooth volume normalization stays symbolic.
inline MassResult mass_integral(const DivisorialDensity& d, const QuadratureOptions& opt = {}) {
    const LogPowerTerm factor(1.0, -1.0 - d.alpha(), 0.0);
    MassResult out;
    out.verdict = classify_at_infinity(factor, 1.0, opt);
    out.per_factor = *out.verdict.value;
    const double prod = std::pow(out.per_factor, d.components());
    out.total_lower = prod / d.bound();
    out.total_upper = prod * d.bound();
    return out;
}

/// Entropy integral f log f: the leading model integrand is s^{-alpha} per
/// factor, finite iff alpha > 1 (value 1/(alpha-1)).
inline ConvergenceVerdict entropy_integral(const DivisorialDensity& d,
                                           const QuadratureOptions& opt = {}) {
    return classify_at_infinity(LogPowerTerm(1.0, -d.alpha(), 0.0), 1.0, opt);
}

/// Pairing against the critical weight (-log|s|)^{1/2}: integrand
/// s^{-1/2-alpha} per factor, finite iff alpha > 1/2 (value
/// 1/(alpha-1/2)). This is the decisive finite-energy test.
inline ConvergenceVerdict critical_pairing(const DivisorialDensity& d,
                                           const QuadratureOptions& opt = {}) {
    const LogPowerTerm pairing =
        multiply(LogPowerTerm(1.0, 0.5, 0.0), LogPowerTerm(1.0, -1.0 - d.alpha(), 0.0));
    return classify_at_infinity(pairing, 1.0, opt);
}

/// Transverse one-dimensional energy of the barrier -(-log|z|)^p:
/// integrand s^{2p-2}, finite iff p < 1/2. Coincides with the radial
/// Dirichlet criterion for the same exponent.
inline ConvergenceVerdict barrier_energy(double p, const QuadratureOptions& opt = {}) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("barrier_energy: p must lie in (0,1)");
    return classify_at_infinity(LogPowerTerm(1.0, 2.0 * p - 2.0, 0.0), 1.0, opt);
}

struct DivisorialVerdict {
    ConvergenceVerdict verdict;
    // exponent window (1-alpha, 1/2) of barriers witnessing the verdict,
    // present when nonempty (alpha > 1/2)
    std::optional<std::pair<double, double>> barrier_window;
};

/// Full classification: finite energy iff alpha > 1/2, endpoint excluded.
inline DivisorialVerdict classify(const DivisorialDensity& d, const QuadratureOptions& opt = {}) {
    DivisorialVerdict out;
    out.verdict = critical_pairing(d, opt);
    const double lo = 1.0 - d.alpha();
    if (lo < 0.5) out.barrier_window = std::make_pair(lo, 0.5);
    return out;
}

}  // namespace energia
