#pragma once

// Exact exponent arithmetic and convergence classification for integrands
// of the form c * t^a * (log t)^b near t -> inf, and c * r^a * (-log r)^b
// near r -> 0+. Every threshold in this project reduces to this class.

#include <cmath>
#include <stdexcept>
#include <string>

#include "energia/quadrature.hpp"
#include "energia/verdict.hpp"

namespace energia {

class UnsupportedForm : public std::invalid_argument {
public:
    explicit UnsupportedForm(const std::string& what) : std::invalid_argument(what) {}
};

/// c * t^a * (log t)^b with c > 0. Signs are tracked by callers; the
/// integrands handled here are nonnegative densities or pairings.
struct LogPowerTerm {
    double coeff;
    double a;  // power exponent
    double b;  // log exponent

    LogPowerTerm(double coeff_, double a_, double b_) : coeff(coeff_), a(a_), b(b_) {
        if (!(coeff > 0.0) || !std::isfinite(coeff))
            throw std::invalid_argument("LogPowerTerm: coefficient must be positive and finite");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("LogPowerTerm: exponents must be finite");
    }

    double eval_at_infinity(double t) const {
        return coeff * std::pow(t, a) * std::pow(std::log(t), b);
    }

    /// Value of c * r^a * (-log r)^b for r in (0,1).
    double eval_at_zero(double r) const {
        return coeff * std::pow(r, a) * std::pow(-std::log(r), b);
    }
};

inline LogPowerTerm multiply(const LogPowerTerm& t1, const LogPowerTerm& t2) {
    return LogPowerTerm(t1.coeff * t2.coeff, t1.a + t2.a, t1.b + t2.b);
}

/// The substitution t = 1/r maps the integral of r^a (-log r)^b over (0,u]
/// to the integral of t^{-a-2} (log t)^b over [1/u, inf).
inline LogPowerTerm substitute_to_infinity(const LogPowerTerm& term) {
    return LogPowerTerm(term.coeff, -term.a - 2.0, term.b);
}

namespace detail {

// Boundary exponents are snapped exactly so that e.g. p = 2/3 computed in
// floating point still lands on the divergent side of a = -1.
inline constexpr double kBoundarySnap = 1e-9;

inline double snap(double x, double target) {
    return (std::abs(x - target) <= kBoundarySnap) ? target : x;
}

}  // namespace detail

/// Classifies the integral of c * t^a * (log t)^b over [lower, inf).
///
/// Converges iff a < -1, or a = -1 and b < -1; the boundary a = -1, b = -1
/// diverges (iterated log). Closed forms are returned when b = 0 or a = -1;
/// otherwise the value comes from quadrature after the substitution
/// u = log t, which turns the integrand into c * e^{(a+1)u} u^b.
inline ConvergenceVerdict classify_at_infinity(const LogPowerTerm& term, double lower,
                                               const QuadratureOptions& opt = {}) {
    if (!(lower > 0.0))
        throw std::invalid_argument("classify_at_infinity: lower must be positive");
    if (term.b != 0.0 && !(lower > 1.0))
        throw std::invalid_argument("classify_at_infinity: lower must exceed 1 when b != 0");
    const double a = detail::snap(term.a, -1.0);
    const double b = detail::snap(term.b, -1.0);

    if (a < -1.0) {
        if (b == 0.0)
            return ConvergenceVerdict::converged(term.coeff * std::pow(lower, a + 1.0) /
                                                 (-a - 1.0));
        const double u0 = std::log(lower);
        const double value = integrate_tail(
            [&](double u) { return term.coeff * std::exp((a + 1.0) * u) * std::pow(u, b); },
            u0, opt.tol, opt.max_panels);
        return ConvergenceVerdict::converged(value);
    }
    if (a == -1.0) {
        if (b < -1.0)
            return ConvergenceVerdict::converged(term.coeff *
                                                 std::pow(std::log(lower), b + 1.0) / (-b - 1.0));
        return ConvergenceVerdict::diverged_log();
    }
    return ConvergenceVerdict::diverged_power(a);
}

/// Classifies the integral of c * r^a * (-log r)^b over (0, upper],
/// 0 < upper < 1, by the substitution t = 1/r.
inline ConvergenceVerdict classify_at_zero(const LogPowerTerm& term, double upper,
                                           const QuadratureOptions& opt = {}) {
    if (!(upper > 0.0) || !(upper < 1.0))
        throw std::invalid_argument("classify_at_zero: upper must lie in (0,1)");
    return classify_at_infinity(substitute_to_infinity(term), 1.0 / upper, opt);
}

}  // namespace energia
