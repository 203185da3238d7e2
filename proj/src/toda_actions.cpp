#include "todaspec/toda_actions.hpp"

#include <cmath>
#include <string>

#include "todaspec/errors.hpp"
#include "todaspec/parallel.hpp"

namespace todaspec {

double stable_arcosh(double x) {
    const double t = x - 1.0;
    if (t < 1e-8) {
        if (t <= 0.0) return 0.0;
        // arcosh(1+t) = sqrt(2t) (1 - t/12 + 3t^2/160 - ...)
        return std::sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0);
    }
    return std::log(x + std::sqrt(x * x - 1.0));
}

namespace {

constexpr double ARG_FAIL = 1e-10;  // deeper violations signal a sign bug

double checked_argument(double raw, int gap) {
    if (raw < 1.0 - ARG_FAIL)
        throw NegativeArcoshArgument("actions: arcosh argument " + std::to_string(raw) +
                                     " < 1 at an interior node of gap " + std::to_string(gap));
    return raw < 1.0 ? 1.0 : raw;
}

ActionSet with_quotients(std::vector<double> I, const SpectrumN& sp) {
    ActionSet as;
    as.I = std::move(I);
    as.J = j_quotients(as, sp);
    return as;
}

}  // namespace

namespace {

// Below this gap excess the arcosh integrand carries >~1e-9 relative noise
// and quadrature resolves nothing the parabolic model does not already give.
constexpr double ACTION_MODEL_EPS = 1e-6;

// Parabolic-cap value gamma sqrt(2 s)/4 used when the excess s of the
// discriminant over the gap is below the evaluation noise floor; keeps
// I > 0 on open gaps while avoiding quadrature on pure noise.
double degenerate_action(double gamma, double excess) {
    return gamma * std::sqrt(2.0 * std::max(excess, 0.0)) / 4.0;
}

}  // namespace

ActionSet actions_arcosh(const TodaState& state, const SpectrumN& sp,
                         const QuadratureOptions& opts) {
    const int n_gaps = sp.N - 1;
    std::vector<double> I(static_cast<std::size_t>(n_gaps), 0.0);
    parallel_for(1, n_gaps + 1, [&](int n) {
        if (sp.closed[std::size_t(n - 1)]) return;
        const double excess = gap_center_excess(state, sp, n);
        if (excess < ACTION_MODEL_EPS) {
            I[std::size_t(n - 1)] = degenerate_action(sp.gap_len[std::size_t(n - 1)], excess);
            return;
        }
        const double sign = ((sp.N - n) % 2 == 0) ? 1.0 : -1.0;
        const double val = cosine_plain_integral(
            sp.gap_lo(n), sp.gap_hi(n),
            [&](double mu, double, double) {
                const double arg = checked_argument(sign * discriminant(state, mu).delta / 2.0, n);
                return stable_arcosh(arg);
            },
            opts);
        I[std::size_t(n - 1)] = val / M_PI;
    });
    return with_quotients(std::move(I), sp);
}

ActionSet actions_moment(const TodaState& state, const SpectrumN& sp,
                         const QuadratureOptions& opts) {
    const int n_gaps = sp.N - 1;
    std::vector<double> I(static_cast<std::size_t>(n_gaps), 0.0);
    parallel_for(1, n_gaps + 1, [&](int n) {
        if (sp.closed[std::size_t(n - 1)]) return;
        const double excess = gap_center_excess(state, sp, n);
        if (excess < ACTION_MODEL_EPS) {
            I[std::size_t(n - 1)] = degenerate_action(sp.gap_len[std::size_t(n - 1)], excess);
            return;
        }
        const double l = sp.gap_lo(n), r = sp.gap_hi(n);
        const double dot = sp.dot_lambda[std::size_t(n - 1)];
        // sqrt[c]{Delta^2-4}(mu-i0) = (-1)^{N+1-n} sqrt+(Delta^2-4) on gap n;
        // with sqrt+(Delta^2-4) = G * sqrt((mu-l)(r-mu)) the Chebyshev mean
        // absorbs the endpoint factor.
        const double sign = ((sp.N + 1 - n) % 2 == 0) ? 1.0 : -1.0;
        const double mean = chebyshev_singular_mean(
            l, r,
            [&](double mu, double dl, double dr) {
                const auto d = discriminant(state, mu);
                const double disc = d.delta * d.delta - 4.0;
                const double G = std::sqrt(std::max(0.0, disc / (dl * dr)));
                if (G == 0.0) return 0.0;
                return (mu - dot) * d.delta_dot / G;
            },
            opts);
        I[std::size_t(n - 1)] = sign * mean;
    });
    return with_quotients(std::move(I), sp);
}

std::vector<double> j_quotients(const ActionSet& actions, const SpectrumN& sp) {
    const std::size_t n_gaps = actions.I.size();
    std::vector<double> J(n_gaps, 0.0);
    for (std::size_t i = 0; i < n_gaps; ++i) {
        if (sp.closed[i] || sp.gap_len[i] <= 0.0) continue;
        J[i] = actions.I[i] / sp.gap_len[i];
    }
    return J;
}

}  // namespace todaspec
