#include "todaspec/roots.hpp"

#include <cmath>

#include "todaspec/errors.hpp"

namespace todaspec {

double find_root(const DifferentiableFn& f, double lo, double hi, double flo,
                 double fhi, const RootOptions& opts) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketFailure("find_root: endpoint values have equal sign");
    const double lo0 = lo, hi0 = hi;
    while (hi - lo > opts.interval_tol * (1.0 + std::fabs(lo) + std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
        const double fm = f(mid).first;
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opts.newton_polish; ++it) {
        const auto [v, d] = f(x);
        if (v == 0.0 || d == 0.0) break;
        double xn = x - v / d;
        if (!(xn >= lo0 && xn <= hi0)) break;  // diverging step, keep bisection value
        if (xn == x) break;
        x = xn;
    }
    return x;
}

double find_root(const DifferentiableFn& f, double lo, double hi, const RootOptions& opts) {
    return find_root(f, lo, hi, f(lo).first, f(hi).first, opts);
}

}  // namespace todaspec
