#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace energia {

/// Least-squares fit of y ~ c * x^e on positive samples (log-log regression).
struct PowerFit {
    double exponent = 0.0;
    double log_coeff = 0.0;
    double residual = 0.0;  // rms residual in log space

    double coeff() const { return std::exp(log_coeff); }
    double eval(double x) const { return std::exp(log_coeff + exponent * std::log(x)); }
};

inline PowerFit fit_power(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_power: need at least two samples");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_power: samples must be positive");
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    PowerFit fit;
    if (std::abs(denom) < 1e-300) {
        fit.exponent = 0.0;
        fit.log_coeff = sy / dn;
    } else {
        fit.exponent = (dn * sxy - sx * sy) / denom;
        fit.log_coeff = (sy - fit.exponent * sx) / dn;
    }
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(ys[i]) - (fit.log_coeff + fit.exponent * std::log(xs[i]));
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / dn);
    return fit;
}

/// Ordinary least-squares line y ~ intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms residual
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least two samples");
    const double dn = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = dn * sxx - sx * sx;
    LineFit fit;
    if (std::abs(denom) < 1e-300) {
        fit.intercept = sy / dn;
    } else {
        fit.slope = (dn * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.slope * sx) / dn;
    }
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / dn);
    return fit;
}

/// Pairwise (cascade) summation; keeps reductions deterministic and
/// accurate regardless of sequence length.
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v, 0, v.size()); }

}  // namespace energia
