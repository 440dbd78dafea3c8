#pragma once

#include <optional>

namespace energia {

/// How a divergent integral blows up: partial integrals grow like a power
/// of the truncation point, or only logarithmically (includes iterated-log).
enum class DivergenceRate { Power, Log };

/// Outcome of a convergence classification. `converges` implies `value`
/// is set and finite; otherwise `rate` is set.
struct ConvergenceVerdict {
    bool converges = false;
    std::optional<double> value;
    std::optional<DivergenceRate> rate;
    std::optional<double> divergence_exponent;  // set for Power rate

    static ConvergenceVerdict converged(double v) {
        ConvergenceVerdict out;
        out.converges = true;
        out.value = v;
        return out;
    }

    static ConvergenceVerdict diverged_power(double exponent) {
        ConvergenceVerdict out;
        out.rate = DivergenceRate::Power;
        out.divergence_exponent = exponent;
        return out;
    }

    static ConvergenceVerdict diverged_log() {
        ConvergenceVerdict out;
        out.rate = DivergenceRate::Log;
        return out;
    }
};

}  // namespace energia
