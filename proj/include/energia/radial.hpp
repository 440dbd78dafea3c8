#pragma once

// Radial plurisubharmonic model: densities of chi(log|z|), the tail energy
// condition, the p < n/(n+1) threshold, the one-dimensional Dirichlet
// criterion, and the L^p-property counterexample chain.
//
// The dimensional normalization constant of the density is carried
// symbolically: every verdict is scale invariant, so it never enters a
// computed value here.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "energia/fit.hpp"
#include "energia/logpow.hpp"
#include "energia/verdict.hpp"

namespace energia {

class NonConvexWeight : public std::invalid_argument {
public:
    explicit NonConvexWeight(const std::string& what) : std::invalid_argument(what) {}
};

class OutOfFamily : public std::domain_error {
public:
    explicit OutOfFamily(const std::string& what) : std::domain_error(what) {}
};

namespace detail {

// Three-point first and second derivatives on a non-uniform grid,
// one-sided at the boundaries. Derivatives of the local quadratic
// interpolant, exact for quadratics.
inline void differentiate(const std::vector<double>& x, const std::vector<double>& f,
                          std::vector<double>& d1, std::vector<double>& d2) {
    const std::size_t n = x.size();
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = std::clamp<std::size_t>(i, 1, n - 2);  // stencil center
        const double xa = x[j - 1], xb = x[j], xc = x[j + 1];
        const double fa = f[j - 1], fb = f[j], fc = f[j + 1];
        const double wa = 1.0 / ((xa - xb) * (xa - xc));
        const double wb = 1.0 / ((xb - xa) * (xb - xc));
        const double wc = 1.0 / ((xc - xa) * (xc - xb));
        const double xi = x[i];
        d1[i] = fa * wa * (2.0 * xi - xb - xc) + fb * wb * (2.0 * xi - xa - xc) +
                fc * wc * (2.0 * xi - xa - xb);
        d2[i] = 2.0 * (fa * wa + fb * wb + fc * wc);
    }
}

}  // namespace detail

/// Convex increasing weight chi on (-inf, domain_top], either the symbolic
/// family chi_p(t) = -(-t)^p or a grid sample with derivatives taken by
/// finite differences.
class RadialWeight {
public:
    struct PowerLog {
        double p;
    };

    struct Sampled {
        std::vector<double> s;     // increasing, s.back() < 0
        std::vector<double> chi;
        std::vector<double> chi1;  // chi'
        std::vector<double> chi2;  // chi''
    };

    static RadialWeight power_log(double p, double domain_top = -1.0) {
        if (!(p > 0.0) || !(p < 1.0))
            throw NonConvexWeight("RadialWeight: power-log exponent must lie in (0,1)");
        if (!(domain_top < 0.0))
            throw std::invalid_argument("RadialWeight: domain top must be negative");
        RadialWeight w;
        w.kind_ = PowerLog{p};
        w.domain_top_ = domain_top;
        return w;
    }

    static RadialWeight sampled(std::vector<double> s, std::vector<double> chi) {
        if (s.size() != chi.size() || s.size() < 8)
            throw std::invalid_argument("RadialWeight: sampled grid too small");
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!(s[i] > s[i - 1]))
                throw std::invalid_argument("RadialWeight: abscissae must be increasing");
        if (!(s.back() < 0.0))
            throw std::invalid_argument("RadialWeight: sampled domain must stay below 0");
        Sampled data;
        data.s = std::move(s);
        data.chi = std::move(chi);
        detail::differentiate(data.s, data.chi, data.chi1, data.chi2);
        for (std::size_t i = 0; i < data.s.size(); ++i) {
            if (data.chi1[i] < -1e-10 || data.chi2[i] < -1e-10)
                throw NonConvexWeight("RadialWeight: sampled weight is not convex increasing");
        }
        if (!(data.chi1.front() < 1e-6))
            throw NonConvexWeight("RadialWeight: chi' must vanish at the left end of the grid");
        RadialWeight w;
        w.domain_top_ = data.s.back();
        w.kind_ = std::move(data);
        return w;
    }

    /// Two-column text format: one header line, then "s chi(s)" rows with
    /// monotone s.
    static RadialWeight load(std::istream& in) {
        std::string header;
        if (!std::getline(in, header))
            throw std::runtime_error("RadialWeight: empty weight file");
        std::vector<double> s, chi;
        double a, b;
        while (in >> a >> b) {
            s.push_back(a);
            chi.push_back(b);
        }
        return sampled(std::move(s), std::move(chi));
    }

    static RadialWeight load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("RadialWeight: cannot open " + path);
        return load(in);
    }

    bool is_power_log() const { return std::holds_alternative<PowerLog>(kind_); }
    double p() const {
        if (!is_power_log()) throw OutOfFamily("RadialWeight: not a power-log weight");
        return std::get<PowerLog>(kind_).p;
    }
    const Sampled& samples() const { return std::get<Sampled>(kind_); }
    double domain_top() const { return domain_top_; }

private:
    RadialWeight() = default;
    std::variant<PowerLog, Sampled> kind_;
    double domain_top_ = -1.0;
};

/// Monge-Ampere profile (chi')^{n-1} chi'' in the variable u = -s, either
/// symbolic or tabulated on an increasing u grid.
struct MaProfile {
    std::optional<LogPowerTerm> symbolic;
    std::vector<double> u;
    std::vector<double> density;
};

namespace detail {

struct SampledIntegrand {
    std::vector<double> u;  // increasing
    std::vector<double> g;  // nonnegative
};

// Tabulate g(u) for u = -s, reversing the grid so u increases.
template <class Fn>
SampledIntegrand tabulate(const RadialWeight::Sampled& data, Fn&& value) {
    SampledIntegrand out;
    const std::size_t n = data.s.size();
    out.u.reserve(n);
    out.g.reserve(n);
    for (std::size_t k = n; k-- > 0;) {
        out.u.push_back(-data.s[k]);
        out.g.push_back(value(k));
    }
    return out;
}

// Classify a tabulated nonnegative integrand on [u_min, inf) whose tail is
// (asymptotically) a pure power: trapezoid over the grid plus a power-fit
// tail beyond the last node.
inline ConvergenceVerdict classify_sampled(const SampledIntegrand& s, int window = 10) {
    // the outermost node carries a one-sided derivative stencil whose
    // error is an order worse than the interior; keep it out of the fit,
    // the tail anchor and the body
    const std::size_t n = s.u.size() - 1;
    if (n < static_cast<std::size_t>(window) + 2)
        throw std::invalid_argument("classify_sampled: grid too small");
    std::vector<double> xs, ys;
    for (std::size_t i = n - static_cast<std::size_t>(window); i < n; ++i) {
        xs.push_back(s.u[i]);
        ys.push_back(std::max(s.g[i], 1e-300));
    }
    const PowerFit fit = fit_power(xs, ys);
    if (!(fit.exponent < -1.0)) {
        return (fit.exponent > -1.0 + 1e-6) ? ConvergenceVerdict::diverged_power(fit.exponent)
                                            : ConvergenceVerdict::diverged_log();
    }
    std::vector<double> pieces;
    pieces.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        pieces.push_back(0.5 * (s.g[i] + s.g[i + 1]) * (s.u[i + 1] - s.u[i]));
    const double body = pairwise_sum(pieces);
    const double tail = s.g[n - 1] * s.u[n - 1] / (-fit.exponent - 1.0);
    return ConvergenceVerdict::converged(body + tail);
}

}  // namespace detail

/// Density profile of the radial Monge-Ampere measure in dimension n.
/// Symbolic case: coeff p^n (1-p), exponent np - n - 1 in u = -s.
inline MaProfile ma_profile(const RadialWeight& w, int n) {
    if (n < 1) throw std::invalid_argument("ma_profile: dimension must be >= 1");
    MaProfile out;
    if (w.is_power_log()) {
        const double p = w.p();
        out.symbolic.emplace(std::pow(p, n) * (1.0 - p),
                             static_cast<double>(n) * p - static_cast<double>(n) - 1.0, 0.0);
        return out;
    }
    const auto& data = w.samples();
    auto tab = detail::tabulate(data, [&](std::size_t k) {
        return std::pow(data.chi1[k], n - 1) * data.chi2[k];
    });
    out.u = std::move(tab.u);
    out.density = std::move(tab.g);
    return out;
}

/// Finite-energy test: tail integral of -chi (chi')^{n-1} chi''.
/// For chi_p the integrand is p^n (1-p) u^{(n+1)p - n - 1}, so the verdict
/// is Converges exactly when p < n/(n+1).
inline ConvergenceVerdict classify_energy(const RadialWeight& w, int n,
                                          const QuadratureOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("classify_energy: dimension must be >= 1");
    if (w.is_power_log()) {
        const double p = w.p();
        const double nn = static_cast<double>(n);
        const LogPowerTerm term(std::pow(p, n) * (1.0 - p), (nn + 1.0) * p - nn - 1.0, 0.0);
        return classify_at_infinity(term, -w.domain_top(), opt);
    }
    const auto& data = w.samples();
    auto tab = detail::tabulate(data, [&](std::size_t k) {
        return -data.chi[k] * std::pow(data.chi1[k], n - 1) * data.chi2[k];
    });
    return detail::classify_sampled(tab);
}

/// One-dimensional Sobolev criterion: tail integral of (chi')^2.
/// Shares its verdict with classify_energy(w, 1).
inline ConvergenceVerdict dirichlet_energy(const RadialWeight& w,
                                           const QuadratureOptions& opt = {}) {
    if (w.is_power_log()) {
        const double p = w.p();
        const LogPowerTerm term(p * p, 2.0 * p - 2.0, 0.0);
        return classify_at_infinity(term, -w.domain_top(), opt);
    }
    const auto& data = w.samples();
    auto tab = detail::tabulate(data, [&](std::size_t k) {
        return data.chi1[k] * data.chi1[k];
    });
    return detail::classify_sampled(tab);
}

/// Integrability of g(z) = (-log|z|)^gamma to the power q against the
/// radial measure of chi_p: exponent q*gamma + n*p - n - 1, finite iff it
/// is below -1.
inline ConvergenceVerdict lp_membership(double gamma, const RadialWeight& w, int n, double q,
                                        const QuadratureOptions& opt = {}) {
    if (!w.is_power_log())
        throw OutOfFamily("lp_membership: requires a power-log weight");
    if (q < 0.0) throw std::invalid_argument("lp_membership: q must be nonnegative");
    const double p = w.p();
    const double nn = static_cast<double>(n);
    const LogPowerTerm term(std::pow(p, n) * (1.0 - p), q * gamma + nn * p - nn - 1.0, 0.0);
    return classify_at_infinity(term, -w.domain_top(), opt);
}

/// The density (-log|z|)^gamma times the profile of chi_p matches the
/// profile of chi_{p'} with p' = p + gamma/n.
inline RadialWeight perturbed_weight(double gamma, const RadialWeight& w, int n) {
    if (!w.is_power_log())
        throw OutOfFamily("perturbed_weight: requires a power-log weight");
    if (n < 1) throw std::invalid_argument("perturbed_weight: dimension must be >= 1");
    const double p_new = w.p() + gamma / static_cast<double>(n);
    if (!(p_new > 0.0) || !(p_new < 1.0))
        throw OutOfFamily("perturbed_weight: perturbed exponent leaves (0,1)");
    return RadialWeight::power_log(p_new, w.domain_top());
}

}  // namespace energia
