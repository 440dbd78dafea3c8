#pragma once

// Discrete convex analysis on one-dimensional grids: grid convex
// functions, the Legendre-Fenchel transform in linear time, biconjugacy
// and subgradient images.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace energia {

class SlopeOutOfRange : public std::domain_error {
public:
    explicit SlopeOutOfRange(const std::string& what) : std::domain_error(what) {}
};

class NotConvex : public std::invalid_argument {
public:
    explicit NotConvex(const std::string& what) : std::invalid_argument(what) {}
};

/// Behavior outside the grid: either the function is +infinity there, or
/// it continues affinely with the given slopes.
struct AffineExtension {
    double left_slope;
    double right_slope;
};

struct Interval {
    double lo;
    double hi;
};

/// A convex function sampled on a strictly increasing grid; piecewise
/// linear in between. +infinity outside the grid is an explicit tag,
/// never a sentinel float.
class SampledConvexFunction {
public:
    SampledConvexFunction(std::vector<double> grid, std::vector<double> values,
                          std::optional<AffineExtension> extension = std::nullopt)
        : x_(std::move(grid)), v_(std::move(values)), ext_(extension) {
        if (x_.size() != v_.size() || x_.size() < 2)
            throw std::invalid_argument("SampledConvexFunction: need at least two points");
        double prev_slope = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < x_.size(); ++i) {
            if (!(x_[i] > x_[i - 1]))
                throw std::invalid_argument("SampledConvexFunction: grid must be increasing");
            const double slope = (v_[i] - v_[i - 1]) / (x_[i] - x_[i - 1]);
            // chord slopes over tight spacings carry rounding noise of
            // order eps |v| / dx; tolerate that on top of the relative term
            const double noise = 4.0 * std::numeric_limits<double>::epsilon() *
                                 std::max({std::abs(v_[i]), std::abs(v_[i - 1]), 1.0}) /
                                 (x_[i] - x_[i - 1]);
            const double tol =
                1e-12 * std::max({1.0, std::abs(slope), std::abs(prev_slope)}) + noise;
            if (slope < prev_slope - tol)
                throw NotConvex("SampledConvexFunction: slopes must be nondecreasing");
            prev_slope = std::max(prev_slope, slope);
        }
        if (ext_) {
            if (ext_->left_slope > min_slope() || ext_->right_slope < max_slope())
                throw NotConvex("SampledConvexFunction: extension slopes must bracket the grid");
        }
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<double>& values() const { return v_; }
    const std::optional<AffineExtension>& extension() const { return ext_; }

    double min_slope() const { return (v_[1] - v_[0]) / (x_[1] - x_[0]); }
    double max_slope() const {
        const std::size_t n = x_.size();
        return (v_[n - 1] - v_[n - 2]) / (x_[n - 1] - x_[n - 2]);
    }

    /// Piecewise-linear evaluation; +infinity outside the grid unless an
    /// affine extension is present.
    double operator()(double x) const {
        if (x < x_.front() || x > x_.back()) {
            if (!ext_) return std::numeric_limits<double>::infinity();
            return (x < x_.front()) ? v_.front() + ext_->left_slope * (x - x_.front())
                                    : v_.back() + ext_->right_slope * (x - x_.back());
        }
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = std::min<std::size_t>(
            x_.size() - 1, static_cast<std::size_t>(it - x_.begin()));
        const std::size_t lo = i - 1;
        const double t = (x - x_[lo]) / (x_[i] - x_[lo]);
        return v_[lo] + t * (v_[i] - v_[lo]);
    }

    void save(std::ostream& out) const {
        out << "x value\n";
        out.precision(17);
        for (std::size_t i = 0; i < x_.size(); ++i) out << x_[i] << ' ' << v_[i] << '\n';
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("SampledConvexFunction: cannot open " + path);
        save(out);
    }

    static SampledConvexFunction load(std::istream& in) {
        std::string header;
        if (!std::getline(in, header))
            throw std::runtime_error("SampledConvexFunction: empty input");
        std::vector<double> x, v;
        double a, b;
        while (in >> a >> b) {
            x.push_back(a);
            v.push_back(b);
        }
        return SampledConvexFunction(std::move(x), std::move(v));
    }

    static SampledConvexFunction load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("SampledConvexFunction: cannot open " + path);
        return load(in);
    }

private:
    std::vector<double> x_, v_;
    std::optional<AffineExtension> ext_;
};

/// Closure of the gradient image: [min slope, max slope] of the grid.
inline Interval subgradient_image(const SampledConvexFunction& f) {
    return {f.min_slope(), f.max_slope()};
}

/// Legendre-Fenchel transform f*(p) = sup_x (x p - f(x)) on the given
/// slope grid (must be sorted increasing). The argmax is monotone in p, so
/// one sweep over the grid computes all outputs in O(N + M); the result is
/// exact for piecewise-linear f. Slopes outside the representable range
/// raise SlopeOutOfRange.
inline SampledConvexFunction legendre_transform(const SampledConvexFunction& f,
                                                const std::vector<double>& slopes) {
    if (slopes.size() < 2)
        throw std::invalid_argument("legendre_transform: need at least two target slopes");
    for (std::size_t i = 1; i < slopes.size(); ++i)
        if (!(slopes[i] > slopes[i - 1]))
            throw std::invalid_argument("legendre_transform: target slopes must be increasing");

    double lo = f.min_slope(), hi = f.max_slope();
    if (f.extension()) {
        lo = f.extension()->left_slope;
        hi = f.extension()->right_slope;
    }
    const double tol_lo = 1e-9 * (1.0 + std::abs(lo));
    const double tol_hi = 1e-9 * (1.0 + std::abs(hi));
    if (slopes.front() < lo - tol_lo || slopes.back() > hi + tol_hi)
        throw SlopeOutOfRange("legendre_transform: target slope outside the subgradient range");

    const auto& x = f.grid();
    const auto& v = f.values();
    std::vector<double> out(slopes.size());
    std::size_t j = 0;
    for (std::size_t k = 0; k < slopes.size(); ++k) {
        const double p = slopes[k];
        while (j + 1 < x.size() && x[j + 1] * p - v[j + 1] >= x[j] * p - v[j]) ++j;
        out[k] = x[j] * p - v[j];
    }
    return SampledConvexFunction(std::vector<double>(slopes), std::move(out));
}

/// Transform onto `points` uniform slopes spanning the detected
/// subgradient image.
inline SampledConvexFunction legendre_transform(const SampledConvexFunction& f,
                                                int points = 2001) {
    if (points < 2) throw std::invalid_argument("legendre_transform: need at least two points");
    const Interval img = subgradient_image(f);
    std::vector<double> slopes(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        slopes[static_cast<std::size_t>(i)] =
            img.lo + (img.hi - img.lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return legendre_transform(f, slopes);
}

/// Transform twice; returns to f's own grid. Equals f up to grid
/// resolution for convex f, exactly for piecewise-linear f.
inline SampledConvexFunction biconjugate(const SampledConvexFunction& f, int points = 2001) {
    const SampledConvexFunction fstar = legendre_transform(f, points);
    // Beyond its slope grid the conjugate is affine with slopes equal to
    // the endpoints of f's domain, so extending it there lets the second
    // transform reach all of f's grid.
    const SampledConvexFunction extended(
        std::vector<double>(fstar.grid()), std::vector<double>(fstar.values()),
        AffineExtension{f.grid().front(), f.grid().back()});
    return legendre_transform(extended, f.grid());
}

}  // namespace energia
