#pragma once

// Adaptive quadrature on rays [L, inf) and an empirical convergence
// detector. This is the numeric side of every dual-route check: the
// symbolic classifier never consults it for verdicts, only for values,
// and the tests compare the two.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "energia/fit.hpp"
#include "energia/verdict.hpp"

namespace energia {

struct QuadratureOptions {
    double tol = 1e-8;   // relative
    int max_panels = 60; // geometric doublings of the truncation point
};

class NonIntegrableSuspected : public std::runtime_error {
public:
    explicit NonIntegrableSuspected(const std::string& what) : std::runtime_error(what) {}
};

class InconclusiveDetection : public std::runtime_error {
public:
    explicit InconclusiveDetection(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Gauss-Kronrod 7-15 on [-1,1]: abscissa, Gauss weight, Kronrod weight.
// Rows 0-3 are the Gauss nodes (0 and three positive), rows 4-7 Kronrod-only.
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double y0 = f(mid);
    double g7 = kGK15[0][1] * y0;
    double k15 = kGK15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kGK15[i][1] * yi;
        k15 += kGK15[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;
    err = std::abs(k15 - g7);
    return k15;
}

template <class F>
double adaptive_interval(const F& f, double a, double b, double abs_tol, int depth) {
    double err = 0;
    const double s = gk15(f, a, b, err);
    if (err <= abs_tol || depth >= 48) return s;
    const double mid = 0.5 * (a + b);
    return adaptive_interval(f, a, mid, 0.5 * abs_tol, depth + 1) +
           adaptive_interval(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace detail

/// Integral of f over the finite interval [a, b], adaptive GK7-15 bisection.
template <class F>
double integrate_interval(const F& f, double a, double b, double tol = 1e-10) {
    if (!(b > a)) return 0.0;
    double err = 0;
    const double rough = detail::gk15(f, a, b, err);
    const double scale = std::max(std::abs(rough), 1e-300);
    return detail::adaptive_interval(f, a, b, tol * scale, 0);
}

/// Integral of a nonnegative integrable f over [lower, inf).
///
/// Panels [L*2^k, L*2^{k+1}] are integrated adaptively; the tail beyond the
/// last panel is recovered by geometric extrapolation of the increment
/// ratios (exact for pure-power decay). Deterministic for fixed inputs.
/// Throws NonIntegrableSuspected when the increment sequence fails the
/// Cauchy criterion within the panel budget.
template <class F>
double integrate_tail(const F& f, double lower, double tol = 1e-8, int max_panels = 60) {
    if (!(lower > 0.0)) throw std::invalid_argument("integrate_tail: lower must be positive");
    std::vector<double> inc;
    inc.reserve(static_cast<std::size_t>(max_panels));
    double a = lower;
    double prev_extrap = std::numeric_limits<double>::quiet_NaN();
    int stable = 0;
    for (int k = 0; k < max_panels; ++k) {
        const double b = 2.0 * a;
        const double panel = integrate_interval(f, a, b, 0.1 * tol);
        inc.push_back(panel);
        const double total = pairwise_sum(inc);
        if (panel <= 1e-305 * std::max(total, 1.0))
            return total;  // integrand has died off; tail negligible
        if (k >= 1 && inc[k - 1] > 0.0) {
            const double r = inc[k] / inc[k - 1];
            if (r < 0.9999) {
                const double extrap = total + panel * r / (1.0 - r);
                if (std::isfinite(prev_extrap) &&
                    std::abs(extrap - prev_extrap) <= 0.5 * tol * std::abs(extrap)) {
                    if (++stable >= 2) return extrap;
                } else {
                    stable = 0;
                }
                prev_extrap = extrap;
            } else {
                prev_extrap = std::numeric_limits<double>::quiet_NaN();
                stable = 0;
            }
        }
        a = b;
    }
    throw NonIntegrableSuspected("integrate_tail: panel increments failed the Cauchy criterion");
}

/// Empirical convergence detector for a nonnegative f on [lower, inf).
///
/// Partial integrals are taken on truncations lower*2^k and the increment
/// sequence is fitted to C * rho^k * (k+1)^beta. Geometric decay (rho < 1)
/// or a summable power tail (rho ~ 1, beta < -1) yields Converges with an
/// extrapolated value; clear growth yields Diverges. Borderline fits raise
/// InconclusiveDetection rather than guessing. Verdicts here are advisory;
/// the symbolic classifier always wins when both exist.
template <class F>
ConvergenceVerdict empirical_convergence(const F& f, double lower, int budget = 60) {
    if (!(lower > 0.0))
        throw std::invalid_argument("empirical_convergence: lower must be positive");
    if (budget < 8) throw std::invalid_argument("empirical_convergence: budget too small");
    std::vector<double> inc;
    inc.reserve(static_cast<std::size_t>(budget));
    double a = lower;
    for (int k = 0; k < budget; ++k) {
        inc.push_back(integrate_interval(f, a, 2.0 * a, 1e-9));
        a *= 2.0;
    }
    const double total = pairwise_sum(inc);
    if (inc.back() <= 1e-305 * std::max(total, 1.0))
        return ConvergenceVerdict::converged(total);

    // Two competing one-parameter models for the increment sequence,
    // chosen by residual: I_k ~ C rho^k (geometric, integrand a pure power
    // away from the boundary exponent) and I_k ~ C (k+1)^beta (power,
    // integrand at the boundary exponent with a log factor). Fitting both
    // jointly would be ill conditioned: rho^k and k^beta are nearly
    // collinear at these ranges.
    std::vector<double> ks, lks, ys;
    for (std::size_t i = 2; i < inc.size(); ++i) {
        if (!(inc[i] > 0.0))
            throw InconclusiveDetection("empirical_convergence: vanishing increment");
        ks.push_back(static_cast<double>(i));
        lks.push_back(std::log(static_cast<double>(i) + 1.0));
        ys.push_back(std::log(inc[i]));
    }
    const LineFit geom = fit_line(ks, ys);
    const LineFit power = fit_line(lks, ys);
    const double rho = std::exp(geom.slope);
    const double beta = power.slope;

    if (geom.residual <= power.residual) {
        // increments scale like rho^k = 2^{(a+1)k} for integrand exponent a
        if (rho >= 1.001) return ConvergenceVerdict::diverged_power(std::log2(rho) - 1.0);
        if (rho <= 0.999)
            return ConvergenceVerdict::converged(total + inc.back() * rho / (1.0 - rho));
    }

    const double margin = std::max(0.015, 3.0 / static_cast<double>(budget));
    if (beta < -1.0 - margin) {
        // model tail: sum of C (k+1)^beta beyond the last panel, via the
        // integral of the fitted power
        const double m = static_cast<double>(inc.size()) - 1.0;
        const double tail =
            inc.back() * std::pow((m + 1.5) / (m + 1.0), beta + 1.0) * (m + 1.5) / (-beta - 1.0);
        return ConvergenceVerdict::converged(total + tail);
    }
    if (beta > -1.0 + margin) {
        return rho >= 1.001 ? ConvergenceVerdict::diverged_power(std::log2(rho) - 1.0)
                            : ConvergenceVerdict::diverged_log();
    }
    throw InconclusiveDetection(
        "empirical_convergence: increments decay too slowly to extrapolate within budget");
}

}  // namespace energia
