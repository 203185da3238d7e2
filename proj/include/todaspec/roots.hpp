#pragma once
#include <functional>
#include <utility>

namespace todaspec {

/// f(x) -> (value, derivative).  Derivative is only used for polishing.
using DifferentiableFn = std::function<std::pair<double, double>(double)>;

struct RootOptions {
    double interval_tol = 1e-13;  ///< bisect until |hi-lo| < tol*(1+|x|)
    int newton_polish = 3;        ///< Newton steps after bisection, clamped
};

/// Root of f in [lo, hi] given f(lo), f(hi) of opposite sign: bisection to
/// the interval tolerance, then a fixed number of clamped Newton steps.
/// Throws BracketFailure if the endpoint values have equal sign.
double find_root(const DifferentiableFn& f, double lo, double hi,
                 const RootOptions& opts = {});

/// Same, reusing already computed endpoint values.
double find_root(const DifferentiableFn& f, double lo, double hi, double flo,
                 double fhi, const RootOptions& opts = {});

}  // namespace todaspec
