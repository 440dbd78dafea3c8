#pragma once

// Toric finite-energy criteria: the L^q test on the moment polytope, dual
// moment integrals via the change of variables p = grad(phi), the Sobolev
// exponent chain, and the closed-form beta family with its beta < 1/2
// threshold.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "energia/convex.hpp"
#include "energia/fit.hpp"
#include "energia/logpow.hpp"
#include "energia/quadrature.hpp"
#include "energia/radial.hpp"
#include "energia/verdict.hpp"

namespace energia {

class FitUnstable : public std::runtime_error {
public:
    explicit FitUnstable(const std::string& what) : std::runtime_error(what) {}
};

class RangeError : public std::domain_error {
public:
    explicit RangeError(const std::string& what) : std::domain_error(what) {}
};

struct Polytope {
    double lo;
    double hi;
    Polytope(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw std::invalid_argument("Polytope: endpoints must be ordered");
    }
};

/// Toric model on a one-dimensional moment polytope. When `beta` is set
/// the potential is the family x |-> -C (-x)^beta (x < 0), whose conjugate
/// is known in closed form and cross-checked against the numeric
/// transform.
struct ToricModel {
    SampledConvexFunction reference;
    SampledConvexFunction potential;
    Polytope polytope;
    std::optional<double> beta;
    double beta_constant = 1.0;
};

inline double beta_star(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("beta_star: beta must lie in (0,1)");
    return beta / (1.0 - beta);
}

/// Coefficient K in the conjugate K * p^{-beta*} of -C(-x)^beta.
/// K = (1-beta) * beta^{beta*} * C^{1/(1-beta)}; K = 1 exactly when
/// C = (1-beta)^{beta-1} * beta^{-beta}.
inline double beta_conjugate_coeff(double beta, double C = 1.0) {
    const double bs = beta_star(beta);
    return (1.0 - beta) * std::pow(beta, bs) * std::pow(C, 1.0 / (1.0 - beta));
}

namespace detail {

// Argmax location t* = (C beta / p)^{1/(1-beta)} of C t^beta - p t.
inline double beta_argmax(double beta, double C, double p) {
    return std::pow(C * beta / p, 1.0 / (1.0 - beta));
}

struct EndpointFits {
    PowerFit left;   // |f| ~ c * d^{-kappa}: exponent is -kappa
    PowerFit right;
};

inline EndpointFits fit_endpoints(const std::vector<double>& x, const std::vector<double>& v,
                                  const Polytope& P, int window) {
    const std::size_t n = x.size();
    if (n < 2 * static_cast<std::size_t>(window))
        throw std::invalid_argument("lq_norm_on_polytope: grid too small for endpoint fits");
    std::vector<double> dl, fl, dr, fr;
    for (int i = 0; i < window; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        dl.push_back(x[k] - P.lo);
        fl.push_back(std::max(std::abs(v[k]), 1e-300));
        dr.push_back(P.hi - x[n - 1 - k]);
        fr.push_back(std::max(std::abs(v[n - 1 - k]), 1e-300));
    }
    EndpointFits fits{fit_power(dl, fl), fit_power(dr, fr)};
    if (fits.left.residual > 0.05 || fits.right.residual > 0.05)
        throw FitUnstable("endpoint power fit residual exceeds 0.05; verdict withheld");
    return fits;
}

// Integral of |f|^q over P for a sampled f with power endpoint behavior:
// trapezoid over the grid plus fitted power pieces from the grid edges to
// the endpoints. Diverges when either endpoint exponent kappa has
// kappa * q >= 1.
inline ConvergenceVerdict lq_from_samples(const std::vector<double>& x,
                                          const std::vector<double>& v, double q,
                                          const Polytope& P, int window) {
    const EndpointFits fits = fit_endpoints(x, v, P, window);
    const double kl = -fits.left.exponent;
    const double kr = -fits.right.exponent;
    const double worst = std::max(kl, kr) * q;
    if (worst >= 1.0 - 1e-12) {
        return (worst > 1.0 + 1e-6) ? ConvergenceVerdict::diverged_power(worst - 1.0)
                                    : ConvergenceVerdict::diverged_log();
    }
    std::vector<double> pieces;
    pieces.reserve(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double gl = std::pow(std::abs(v[i]), q);
        const double gr = std::pow(std::abs(v[i + 1]), q);
        pieces.push_back(0.5 * (gl + gr) * (x[i + 1] - x[i]));
    }
    double total = pairwise_sum(pieces);
    const double d0 = x.front() - P.lo;
    const double d1 = P.hi - x.back();
    if (d0 > 0.0) {
        const double edge = std::pow(std::abs(v.front()), q);
        total += (kl > 0.0) ? edge * d0 / (1.0 - kl * q) : edge * d0;
    }
    if (d1 > 0.0) {
        const double edge = std::pow(std::abs(v.back()), q);
        total += (kr > 0.0) ? edge * d1 / (1.0 - kr * q) : edge * d1;
    }
    return ConvergenceVerdict::converged(total);
}

// Target slope grid refined geometrically toward both polytope endpoints,
// clipped to the representable slope range of f.
inline std::vector<double> endpoint_refined_grid(const SampledConvexFunction& f,
                                                 const Polytope& P, int points) {
    const double width = P.hi - P.lo;
    const double lo = std::max(f.min_slope(), P.lo + 1e-9 * width);
    const double hi = std::min(f.max_slope(), P.hi - 1e-9 * width);
    const double d_lo = lo - P.lo;
    const double d_hi = P.hi - hi;
    const int half = points / 2;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < half; ++i) {
        const double t = static_cast<double>(i) / (half - 1);
        grid.push_back(P.lo + d_lo * std::pow(0.5 * width / d_lo, t));
    }
    for (int i = half - 1; i >= 0; --i) {
        const double t = static_cast<double>(i) / (half - 1);
        grid.push_back(P.hi - d_hi * std::pow(0.5 * width / d_hi, t));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace detail

/// L^q test on the moment polytope: the potential has finite q-energy iff
/// its conjugate is q-integrable on P. Endpoint singularities are detected
/// by a log-log fit on the innermost `window` grid points.
inline ConvergenceVerdict lq_norm_on_polytope(const SampledConvexFunction& fstar, double q,
                                              const Polytope& P, int window = 10) {
    if (!(q > 0.0)) throw std::invalid_argument("lq_norm_on_polytope: q must be positive");
    return detail::lq_from_samples(fstar.grid(), fstar.values(), q, P, window);
}

/// q-th moment of the pushforward measure, computed on the dual side as
/// the integral of |grad f*|^q over P.
inline ConvergenceVerdict moment_integral(const ToricModel& model, double q, int window = 10) {
    if (!(q > 0.0)) throw std::invalid_argument("moment_integral: q must be positive");
    if (model.beta) {
        const double bs = beta_star(*model.beta);
        const double K = beta_conjugate_coeff(*model.beta, model.beta_constant);
        const double expo = q * (bs + 1.0);  // |grad f*| ~ K bs p^{-(bs+1)}
        if (expo >= 1.0 - 1e-12) {
            return (expo > 1.0 + 1e-6) ? ConvergenceVerdict::diverged_power(expo - 1.0)
                                       : ConvergenceVerdict::diverged_log();
        }
        return ConvergenceVerdict::converged(std::pow(K * bs, q) / (1.0 - expo));
    }
    const auto slopes = detail::endpoint_refined_grid(model.potential, model.polytope, 4001);
    const SampledConvexFunction fstar = legendre_transform(model.potential, slopes);
    std::vector<double> d1, d2;
    detail::differentiate(fstar.grid(), fstar.values(), d1, d2);
    for (double& g : d1) g = std::abs(g);
    return detail::lq_from_samples(fstar.grid(), d1, q, model.polytope, window);
}

/// Critical Sobolev exponent q* = qn/(n-q) for 1 <= q < n, n > 1.
inline double sobolev_exponent(double q, int n) {
    if (n <= 1) throw RangeError("sobolev_exponent: dimension must exceed 1");
    if (!(q >= 1.0) || !(q < static_cast<double>(n)))
        throw RangeError("sobolev_exponent: need 1 <= q < n");
    return q * static_cast<double>(n) / (static_cast<double>(n) - q);
}

/// A synthetic radial convex profile u(rho) on (0,1] with its derivative;
/// the n-dimensional volume factor rho^{n-1} is attached analytically.
struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::string name;
};

struct SobolevReport {
    double qstar = 0.0;
    double fitted_constant = 0.0;           // max ratio over the profiles
    std::vector<double> ratios;             // ||u||_{q*} / ||u'||_q per profile
};

/// Empirical check of ||u||_{L^{q*}} <= C ||grad u||_{L^q} on radial
/// profiles over the unit ball; reports the fitted constant.
inline SobolevReport sobolev_verify(double q, int n, const std::vector<RadialProfile>& profiles,
                                    double tol = 1e-9) {
    SobolevReport report;
    report.qstar = sobolev_exponent(q, n);
    const double nn = static_cast<double>(n);
    for (const auto& prof : profiles) {
        // substitute rho = e^{-s} so the endpoint singularity becomes a tail
        auto num = integrate_interval(
            [&](double s) {
                const double rho = std::exp(-s);
                return std::pow(std::abs(prof.value(rho)), report.qstar) * std::pow(rho, nn);
            },
            0.0, 200.0, tol);
        auto den = integrate_interval(
            [&](double s) {
                const double rho = std::exp(-s);
                return std::pow(std::abs(prof.derivative(rho)), q) * std::pow(rho, nn);
            },
            0.0, 200.0, tol);
        const double ratio = std::pow(num, 1.0 / report.qstar) / std::pow(den, 1.0 / q);
        report.ratios.push_back(ratio);
        report.fitted_constant = std::max(report.fitted_constant, ratio);
    }
    return report;
}

/// Finite-energy test for a toric model: conjugate the potential and run
/// the L^q test on the polytope. Models in the beta family use the
/// closed-form conjugate K p^{-beta*}.
inline ConvergenceVerdict classify_toric_energy(const ToricModel& model, double q,
                                                int window = 10) {
    if (!(q > 0.0)) throw std::invalid_argument("classify_toric_energy: q must be positive");
    if (model.beta) {
        const double bs = beta_star(*model.beta);
        const double K = beta_conjugate_coeff(*model.beta, model.beta_constant);
        const double expo = bs * q;
        if (expo >= 1.0 - 1e-12) {
            return (expo > 1.0 + 1e-6) ? ConvergenceVerdict::diverged_power(expo - 1.0)
                                       : ConvergenceVerdict::diverged_log();
        }
        return ConvergenceVerdict::converged(std::pow(K, q) / (1.0 - expo));
    }
    const auto slopes = detail::endpoint_refined_grid(model.potential, model.polytope, 4001);
    const SampledConvexFunction fstar = legendre_transform(model.potential, slopes);
    return lq_norm_on_polytope(fstar, q, model.polytope, window);
}

/// Builds the beta-family model: potential -C(-x)^beta tabulated on a
/// log-spaced grid wide enough that conjugation is accurate on
/// [p_lo, p_hi], reference phi(x) = log(1+e^{2x})/2 with polytope [0,1].
inline ToricModel make_beta_model(double beta, double C = 1.0, int points = 4001,
                                  double p_lo = 0.005, double p_hi = 0.995) {
    const double bs = beta_star(beta);
    (void)bs;
    if (!(C > 0.0)) throw std::invalid_argument("make_beta_model: C must be positive");
    const double y_lo = std::log(detail::beta_argmax(beta, C, p_hi)) - 3.0;
    const double y_hi = std::log(detail::beta_argmax(beta, C, p_lo)) + 3.0;
    std::vector<double> x, v;
    x.reserve(static_cast<std::size_t>(points));
    v.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        // y descends so x = -e^y increases
        const double y = y_hi + (y_lo - y_hi) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
        x.push_back(-std::exp(y));
        v.push_back(-C * std::exp(beta * y));
    }
    std::vector<double> rx, rv;
    const int ref_points = 2001;
    for (int i = 0; i < ref_points; ++i) {
        const double xx = -20.0 + 40.0 * static_cast<double>(i) / (ref_points - 1);
        rx.push_back(xx);
        rv.push_back(xx > 0.0 ? xx + 0.5 * std::log1p(std::exp(-2.0 * xx))
                              : 0.5 * std::log1p(std::exp(2.0 * xx)));
    }
    ToricModel model{SampledConvexFunction(std::move(rx), std::move(rv)),
                     SampledConvexFunction(std::move(x), std::move(v)),
                     Polytope(0.0, 1.0), beta, C};
    return model;
}

/// Max relative gap between the closed-form conjugate K p^{-beta*} and the
/// numeric transform of the tabulated beta potential over the given p
/// grid.
inline double beta_conjugate_max_relerr(const ToricModel& model,
                                        const std::vector<double>& pgrid) {
    if (!model.beta) throw std::invalid_argument("beta_conjugate_max_relerr: not a beta model");
    const double bs = beta_star(*model.beta);
    const double K = beta_conjugate_coeff(*model.beta, model.beta_constant);
    const SampledConvexFunction fstar = legendre_transform(model.potential, pgrid);
    double worst = 0.0;
    const auto& v = fstar.values();
    for (std::size_t i = 0; i < pgrid.size(); ++i) {
        const double exact = K * std::pow(pgrid[i], -bs);
        worst = std::max(worst, std::abs(v[i] - exact) / exact);
    }
    return worst;
}

}  // namespace energia
