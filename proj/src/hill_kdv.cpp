#include "todaspec/hill_kdv.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "todaspec/errors.hpp"
#include "todaspec/parallel.hpp"
#include "todaspec/roots.hpp"
#include "todaspec/toda_actions.hpp"

namespace todaspec {

namespace {

constexpr double HILL_DEGENERACY_EPS = 1e-9;
constexpr int HILL_MAX_NBASE = 8192;
// Signal thresholds tied to the ODE discriminant noise (~1e-11 absolute):
// below S_CLOSED a gap is unresolvable, below S_MODEL its edges come from
// the parabolic model and its action from the parabolic cap.
constexpr double HILL_S_CLOSED = 1e-10;
constexpr double HILL_S_MODEL = 1e-6;

QuadratureOptions hill_quad(const QuadratureOptions& opts) {
    QuadratureOptions q = opts;
    q.rel_tol = std::max(opts.rel_tol, 1e-10);
    q.initial_nodes = std::max(opts.initial_nodes, 24);
    return q;
}

RootOptions hill_roots() {
    RootOptions r;
    r.interval_tol = 1e-7;
    r.newton_polish = 6;
    return r;
}

// Fundamental system components: (y1, y1', y2, y2', then the first and
// second lambda-derivatives of each).  COMP = 4, 8 or 12.
template <int COMP>
struct HillStateVec {
    double v[COMP];
};

template <int COMP>
inline void hill_deriv(double w, const HillStateVec<COMP>& y, HillStateVec<COMP>& out) {
    // y'' = w y ; d'' = w d - y ; e'' = w e - 2 d  (pairs stored as (f, f')).
    out.v[0] = y.v[1];
    out.v[1] = w * y.v[0];
    out.v[2] = y.v[3];
    out.v[3] = w * y.v[2];
    if constexpr (COMP >= 8) {
        out.v[4] = y.v[5];
        out.v[5] = w * y.v[4] - y.v[0];
        out.v[6] = y.v[7];
        out.v[7] = w * y.v[6] - y.v[2];
    }
    if constexpr (COMP >= 12) {
        out.v[8] = y.v[9];
        out.v[9] = w * y.v[8] - 2.0 * y.v[4];
        out.v[10] = y.v[11];
        out.v[11] = w * y.v[10] - 2.0 * y.v[6];
    }
}

template <int COMP>
HillStateVec<COMP> hill_integrate(const HillPotential& q, double lambda, int steps) {
    HillStateVec<COMP> y{};
    y.v[0] = 1.0;
    y.v[3] = 1.0;
    const double h = 0.5 / double(steps);
    HillStateVec<COMP> k1, k2, k3, k4, t;
    double w0 = q(0.0) - lambda;
    for (int s = 0; s < steps; ++s) {
        const double x = h * double(s);
        const double wh = q(x + 0.5 * h) - lambda;
        const double w1 = q(x + h) - lambda;
        hill_deriv<COMP>(w0, y, k1);
        for (int i = 0; i < COMP; ++i) t.v[i] = y.v[i] + 0.5 * h * k1.v[i];
        hill_deriv<COMP>(wh, t, k2);
        for (int i = 0; i < COMP; ++i) t.v[i] = y.v[i] + 0.5 * h * k2.v[i];
        hill_deriv<COMP>(wh, t, k3);
        for (int i = 0; i < COMP; ++i) t.v[i] = y.v[i] + h * k3.v[i];
        hill_deriv<COMP>(w1, t, k4);
        for (int i = 0; i < COMP; ++i)
            y.v[i] += (h / 6.0) * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        w0 = w1;
    }
    return y;
}

int hill_steps(int n_base, double lambda) {
    return int(std::ceil(double(n_base) * (1.0 + std::sqrt(std::fabs(lambda)) / M_PI)));
}

}  // namespace

HillOperator::HillOperator(HillPotential q, int n_base) : q_(std::move(q)), n_base_(n_base) {}

HillOperator HillOperator::with_auto_steps(HillPotential q, double probe_lambda, int n_base) {
    HillOperator op(std::move(q), n_base);
    while (op.n_base_ < HILL_MAX_NBASE) {
        const double d1 =
            hill_integrate<4>(op.q_, probe_lambda, hill_steps(op.n_base_, probe_lambda)).v[0];
        const double d2 =
            hill_integrate<4>(op.q_, probe_lambda, hill_steps(2 * op.n_base_, probe_lambda)).v[0];
        if (std::fabs(d1 - d2) < 1e-11) break;
        op.n_base_ *= 2;
    }
    return op;
}

DiscriminantValue HillOperator::discriminant(double lambda) const {
    const auto y = hill_integrate<8>(q_, lambda, hill_steps(n_base_, lambda));
    return {y.v[0] + y.v[3], y.v[4] + y.v[7]};
}

double HillOperator::discriminant_second(double lambda) const {
    const auto y = hill_integrate<12>(q_, lambda, hill_steps(n_base_, lambda));
    return y.v[8] + y.v[11];
}

double HillOperator::wronskian_defect(double lambda) const {
    const auto y = hill_integrate<4>(q_, lambda, hill_steps(n_base_, lambda));
    return std::fabs(y.v[0] * y.v[3] - y.v[1] * y.v[2] - 1.0);
}

namespace {

template <typename F>
bool scan_bracket(const F& f, double lo, double hi, double& blo, double& bhi) {
    for (int m = 8; m <= 2048; m *= 2) {
        double xp = lo, fp = f(xp);
        for (int i = 1; i <= m; ++i) {
            const double x = lo + (hi - lo) * double(i) / double(m);
            const double fx = f(x);
            if ((fx > 0.0) != (fp > 0.0)) {
                blo = xp;
                bhi = x;
                return true;
            }
            xp = x;
            fp = fx;
        }
    }
    return false;
}

}  // namespace

HillSpectrum hill_eigenvalues(const HillOperator& op, int K) {
    if (K < 1) throw Error("hill_eigenvalues: K must be >= 1");
    const double Q = op.potential().sup_bound();
    auto center = [](int n) { return 4.0 * M_PI * M_PI * double(n) * double(n); };

    auto ddot = [&op](double lam) {
        return std::pair<double, double>(op.discriminant(lam).delta_dot,
                                         op.discriminant_second(lam));
    };

    // Delta-dot zeros for gaps 1..K+1, bracketed between cluster midpoints.
    std::vector<double> dotl(static_cast<std::size_t>(K + 1));
    parallel_for(1, K + 2, [&](int n) {
        double lo = 0.5 * (center(n - 1) + center(n));
        double hi = 0.5 * (center(n) + center(n + 1));
        double flo = ddot(lo).first, fhi = ddot(hi).first;
        if ((flo > 0.0) == (fhi > 0.0)) {
            auto fonly = [&ddot](double x) { return ddot(x).first; };
            if (!scan_bracket(fonly, lo, hi, lo, hi))
                throw BracketFailure("hill_eigenvalues: no Delta-dot bracket for gap " +
                                     std::to_string(n));
            flo = ddot(lo).first;
            fhi = ddot(hi).first;
        }
        dotl[std::size_t(n - 1)] = find_root(ddot, lo, hi, flo, fhi, hill_roots());
    });

    std::vector<double> lambda(static_cast<std::size_t>(2 * K + 1), 0.0);
    std::vector<char> closed(static_cast<std::size_t>(K), 0);

    // lambda_0: root of Delta = 2 left of the first Delta-dot zero.
    {
        auto f0 = [&op](double lam) {
            const auto d = op.discriminant(lam);
            return std::pair<double, double>(d.delta - 2.0, d.delta_dot);
        };
        double lo = -Q - 1.0, hi = dotl[0];
        double flo = f0(lo).first, fhi = f0(hi).first;
        if ((flo > 0.0) == (fhi > 0.0)) {
            auto fonly = [&f0](double x) { return f0(x).first; };
            if (!scan_bracket(fonly, lo, hi, lo, hi))
                throw BracketFailure("hill_eigenvalues: no bracket for lambda_0");
            flo = f0(lo).first;
            fhi = f0(hi).first;
        }
        lambda[0] = find_root(f0, lo, hi, flo, fhi, hill_roots());
    }

    std::vector<double> excess(static_cast<std::size_t>(K));
    for (int n = 1; n <= K; ++n) {
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        excess[std::size_t(n - 1)] = s * op.discriminant(dotl[std::size_t(n - 1)]).delta - 2.0;
    }

    parallel_for(1, K + 1, [&](int n) {
        const double dot = dotl[std::size_t(n - 1)];
        if (excess[std::size_t(n - 1)] <= HILL_S_CLOSED) {
            lambda[std::size_t(2 * n - 1)] = dot;
            lambda[std::size_t(2 * n)] = dot;
            closed[std::size_t(n - 1)] = 1;
            return;
        }
        if (excess[std::size_t(n - 1)] < HILL_S_MODEL) {
            // Parabolic model of Delta^2 - 4 at the Delta-dot zero.
            const auto d = op.discriminant(dot);
            const double dd = op.discriminant_second(dot);
            const double D0 = d.delta * d.delta - 4.0;
            const double D1 = 2.0 * d.delta * d.delta_dot;
            const double D2 = 2.0 * (d.delta_dot * d.delta_dot + d.delta * dd);
            const double a = std::sqrt(std::max(0.0, -2.0 * D0 / D2));
            const double shift = -D1 / D2;
            lambda[std::size_t(2 * n - 1)] = dot + shift - a;
            lambda[std::size_t(2 * n)] = dot + shift + a;
            return;
        }
        const double s = (n % 2 == 0) ? 1.0 : -1.0;
        auto fn = [&op, s](double lam) {
            const auto d = op.discriminant(lam);
            return std::pair<double, double>(s * d.delta - 2.0, s * d.delta_dot);
        };
        const double left = (n >= 2) ? dotl[std::size_t(n - 2)] : lambda[0];
        lambda[std::size_t(2 * n - 1)] = find_root(fn, left, dot, hill_roots());
        lambda[std::size_t(2 * n)] = find_root(fn, dot, dotl[std::size_t(n)], hill_roots());
    });

    for (int n = 1; n <= K; ++n) {
        if (closed[std::size_t(n - 1)]) continue;
        if (lambda[std::size_t(2 * n)] - lambda[std::size_t(2 * n - 1)] < HILL_DEGENERACY_EPS) {
            lambda[std::size_t(2 * n - 1)] = dotl[std::size_t(n - 1)];
            lambda[std::size_t(2 * n)] = dotl[std::size_t(n - 1)];
            closed[std::size_t(n - 1)] = 1;
        }
    }

    if (!std::is_sorted(lambda.begin(), lambda.end()))
        throw BracketFailure("hill_eigenvalues: located eigenvalues are not sorted");

    HillSpectrum sp;
    sp.K = K;
    sp.lambda = std::move(lambda);
    sp.closed = std::move(closed);
    sp.dot_lambda = std::move(dotl);
    sp.gap_len.resize(std::size_t(K));
    sp.tau.resize(std::size_t(K));
    for (int n = 1; n <= K; ++n) {
        const double lo = sp.gap_lo(n), hi = sp.gap_hi(n);
        sp.gap_len[std::size_t(n - 1)] = sp.closed[std::size_t(n - 1)] ? 0.0 : hi - lo;
        sp.tau[std::size_t(n - 1)] = 0.5 * (lo + hi);
    }
    return sp;
}

std::vector<double> kdv_actions(const HillOperator& op, const HillSpectrum& sp,
                                const QuadratureOptions& opts) {
    const int K = sp.K;
    std::vector<double> I(static_cast<std::size_t>(K), 0.0);
    parallel_for(1, K + 1, [&](int n) {
        if (sp.closed[std::size_t(n - 1)]) return;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double excess = sign * op.discriminant(sp.tau[std::size_t(n - 1)]).delta / 2.0 - 1.0;
        if (excess < HILL_S_MODEL) {
            // Parabolic cap, (2/pi) times the Toda-side value.
            I[std::size_t(n - 1)] =
                sp.gap_len[std::size_t(n - 1)] * std::sqrt(2.0 * std::max(excess, 0.0)) / 2.0;
            return;
        }
        const double val = cosine_plain_integral(
            sp.gap_lo(n), sp.gap_hi(n),
            [&](double lam, double, double) {
                const double raw = sign * op.discriminant(lam).delta / 2.0;
                if (raw < 1.0 - 1e-7)
                    throw NegativeArcoshArgument(
                        "kdv_actions: arcosh argument below 1 in gap " + std::to_string(n));
                return stable_arcosh(std::max(1.0, raw));
            },
            hill_quad(opts));
        I[std::size_t(n - 1)] = 2.0 * val / M_PI;
    });
    return I;
}

KdvDifferential kdv_psi(const HillSpectrum& sp, int n, int K_sigma,
                        const QuadratureOptions& opts) {
    const int K = sp.K;
    if (n < 1 || n > K) throw Error("kdv_psi: n out of range");
    K_sigma = std::min(K_sigma, K);

    KdvDifferential out;
    out.n = n;
    out.K_sigma = K_sigma;
    out.sigma.resize(std::size_t(K_sigma));
    for (int l = 1; l <= K_sigma; ++l) out.sigma[std::size_t(l - 1)] = sp.tau[std::size_t(l - 1)];

    std::vector<int> unknowns;  // open gaps l <= K_sigma, l != n
    for (int l = 1; l <= K_sigma; ++l)
        if (l != n && !sp.closed[std::size_t(l - 1)]) unknowns.push_back(l);

    // Evaluates the vanishing-condition integrals and their Jacobian on a
    // per-gap Chebyshev grid of m nodes, in the quotient form: the gap-m
    // singular root is absorbed by the grid, the (sigma_m - lam) numerator
    // stays explicit, every other resolved gap contributes
    // (sigma_l - lam)/w_l(lam) -> 1.
    auto residuals = [&](const std::vector<double>& sig, int m_nodes,
                         std::vector<double>& r, std::vector<double>& scale,
                         Eigen::MatrixXd* jac) {
        const int nu = int(unknowns.size());
        r.assign(std::size_t(nu), 0.0);
        scale.assign(std::size_t(nu), 0.0);
        if (jac) jac->setZero(nu, nu);
        for (int uc = 0; uc < nu; ++uc) {
            const int m = unknowns[std::size_t(uc)];
            const double lo = sp.gap_lo(m), hi = sp.gap_hi(m);
            const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
            for (int i = 0; i < m_nodes; ++i) {
                const double theta = M_PI * (2.0 * double(i) + 1.0) / (2.0 * double(m_nodes));
                const double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
                const double lam = mid + half * std::cos(theta);
                const double dl = 2.0 * half * ch * ch, dr = 2.0 * half * sh * sh;
                auto dist = [&](double x) {
                    if (x <= lo) return dl + (lo - x);
                    if (x >= hi) return dr + (x - hi);
                    return std::fabs(x - lam);
                };
                // log of the positive part of psi_n/sqrt(Delta^2-4) with the
                // gap-m root absorbed and (sigma_m - lam) factored out.
                double S = -0.5 * std::log(dist(sp.lambda[0]));
                S -= 0.5 * std::log(dist(sp.gap_lo(n))) + 0.5 * std::log(dist(sp.gap_hi(n)));
                for (int l = 1; l <= K; ++l) {
                    if (l == n || l == m) continue;
                    const double s_l =
                        (l <= K_sigma) ? sig[std::size_t(l - 1)] : sp.tau[std::size_t(l - 1)];
                    S += std::log(dist(s_l)) - 0.5 * std::log(dist(sp.gap_lo(l))) -
                         0.5 * std::log(dist(sp.gap_hi(l)));
                }
                const double P = std::exp(S);
                const double resid_term = (sig[std::size_t(m - 1)] - lam) * P;
                r[std::size_t(uc)] += resid_term;
                // Mean of |P| alone: r/scale then measures the implied
                // sigma displacement in lambda units.
                scale[std::size_t(uc)] += std::fabs(P);
                if (jac) {
                    (*jac)(uc, uc) += P;
                    for (int vc = 0; vc < nu; ++vc) {
                        const int l2 = unknowns[std::size_t(vc)];
                        if (l2 == m) continue;
                        (*jac)(uc, vc) += resid_term / (sig[std::size_t(l2 - 1)] - lam);
                    }
                }
            }
            const double inv = 1.0 / double(m_nodes);
            r[std::size_t(uc)] *= inv;
            scale[std::size_t(uc)] *= inv;
            if (jac) jac->row(uc) *= inv;
        }
    };

    int iters = 0;
    if (!unknowns.empty()) {
        const int nu = int(unknowns.size());
        std::vector<double> sig = out.sigma, r, scale;
        Eigen::MatrixXd jac(nu, nu);
        const int m_nodes = 48;
        for (iters = 0; iters < 30; ++iters) {
            residuals(sig, m_nodes, r, scale, &jac);
            Eigen::VectorXd rv(nu);
            for (int u = 0; u < nu; ++u) rv(u) = r[std::size_t(u)];
            const Eigen::VectorXd step = jac.partialPivLu().solve(rv);
            if (!step.allFinite())
                throw NewtonDivergence("kdv_psi: nonfinite Newton step after " +
                                       std::to_string(iters) + " iterations");
            double max_step = 0.0;
            for (int u = 0; u < nu; ++u) {
                const int l = unknowns[std::size_t(u)];
                double v = sig[std::size_t(l - 1)] - step(u);
                v = std::min(std::max(v, sp.gap_lo(l)), sp.gap_hi(l));  // clamp to the gap
                max_step = std::max(max_step,
                                    std::fabs(v - sig[std::size_t(l - 1)]) / (1.0 + std::fabs(v)));
                sig[std::size_t(l - 1)] = v;
            }
            if (max_step < 1e-13) break;
        }
        out.sigma = sig;
        // Re-verified sigma displacement at doubled node count, relative to
        // the spectral scale.
        residuals(sig, 2 * m_nodes, r, scale, nullptr);
        double worst = 0.0;
        for (int u = 0; u < nu; ++u)
            worst = std::max(worst, std::fabs(r[std::size_t(u)]) /
                                        std::max(scale[std::size_t(u)], 1e-300));
        out.newton_residual = worst / (1.0 + std::fabs(sp.tau[std::size_t(K_sigma - 1)]));
        out.iterations = iters;
        if (out.newton_residual > 1e-9)
            throw NewtonDivergence("kdv_psi: Newton stalled at relative displacement " +
                                   std::to_string(out.newton_residual) + " after " +
                                   std::to_string(iters) + " iterations");
    }

    // Cycle-n normalization constant, |value| compared to 1.  On an open
    // gap this is the Chebyshev mean of the quotient form; on a closed gap
    // it is the residue value at tau_n.
    auto norm_factor = [&](double lam, double dl, double dr, bool absorb_n) {
        auto dist = [&](double x) {
            const double lo = sp.gap_lo(n), hi = sp.gap_hi(n);
            if (absorb_n) {
                if (x <= lo) return dl + (lo - x);
                if (x >= hi) return dr + (x - hi);
            }
            return std::fabs(x - lam);
        };
        double S = std::log(2.0 * M_PI * double(n)) - 0.5 * std::log(dist(sp.lambda[0]));
        for (int l = 1; l <= K; ++l) {
            if (l == n) continue;
            const double s_l = (l <= K_sigma) ? out.sigma[std::size_t(l - 1)]
                                              : sp.tau[std::size_t(l - 1)];
            S += std::log(dist(s_l)) - 0.5 * std::log(dist(sp.gap_lo(l))) -
                 0.5 * std::log(dist(sp.gap_hi(l)));
        }
        return std::exp(S);
    };
    double norm_value;
    if (sp.closed[std::size_t(n - 1)]) {
        const double tau = sp.tau[std::size_t(n - 1)];
        norm_value = norm_factor(tau, 0.0, 0.0, false);
    } else {
        norm_value = chebyshev_singular_mean(
            sp.gap_lo(n), sp.gap_hi(n),
            [&](double lam, double dl, double dr) { return norm_factor(lam, dl, dr, true); },
            opts);
    }
    out.normalization_residual = std::fabs(norm_value) - 1.0;
    return out;
}

namespace {

double kdv_band_first_kind(const HillOperator& op, const HillSpectrum& sp, int j,
                           const QuadratureOptions& opts) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    const double arc = cosine_plain_integral(
        sp.band_lo(j), sp.band_hi(j),
        [&](double lam, double, double) {
            const double raw = sign * op.discriminant(lam).delta / 2.0;
            if (std::fabs(raw) > 1.0 + 1e-7)
                throw Error("kdv_frequencies: arccos argument out of range on band " +
                            std::to_string(j));
            return std::acos(std::min(1.0, std::max(-1.0, raw)));
        },
        hill_quad(opts));
    return -M_PI * sp.band_lo(j) - arc;
}

// integral over band j of psi_k / (i sqrt[c]{Delta^2-4}) in quotient form;
// always positive.
double kdv_band_psi(const HillSpectrum& sp, const KdvDifferential& psi, int k, int j,
                    const QuadratureOptions& opts) {
    const int K = sp.K;
    const double l0 = sp.band_lo(j), r0 = sp.band_hi(j);
    const double mean = chebyshev_singular_mean(
        l0, r0,
        [&](double lam, double dl, double dr) {
            auto dist = [&](double x) {
                if (x <= l0) return dl + (l0 - x);
                if (x >= r0) return dr + (x - r0);
                return std::fabs(x - lam);
            };
            double S = std::log(2.0 * M_PI * double(k));
            if (j == 1) {
                S -= 0.5 * std::log(dl);  // lambda_0 is the left band edge
            } else {
                S -= 0.5 * std::log(dist(sp.lambda[0]));
            }
            for (int l = 1; l <= K; ++l) {
                const double dlo = (l == j) ? dr : dist(sp.gap_lo(l));
                const double dhi = (l == j - 1) ? dl : dist(sp.gap_hi(l));
                if (l != k) {
                    const double s_l = (l <= psi.K_sigma) ? psi.sigma[std::size_t(l - 1)]
                                                          : sp.tau[std::size_t(l - 1)];
                    S += std::log(dist(s_l));
                }
                S -= 0.5 * std::log(dlo) + 0.5 * std::log(dhi);
            }
            return std::exp(S);
        },
        opts);
    return M_PI * mean;
}

}  // namespace

std::vector<double> kdv_frequencies(const HillOperator& op, const HillSpectrum& sp,
                                    const std::vector<double>& actions, int n_max,
                                    int K_sigma, const QuadratureOptions& opts) {
    const int K = sp.K;
    if (n_max > K) throw Error("kdv_frequencies: n_max exceeds resolved gap count");

    std::vector<double> first(static_cast<std::size_t>(n_max));
    parallel_for(1, n_max + 1, [&](int j) {
        first[std::size_t(j - 1)] = kdv_band_first_kind(op, sp, j, opts);
    });

    std::vector<int> coupled;
    for (int k = 1; k <= K && k < int(actions.size()) + 1; ++k)
        if (!sp.closed[std::size_t(k - 1)] && actions[std::size_t(k - 1)] > 1e-19)
            coupled.push_back(k);

    std::vector<KdvDifferential> psis(coupled.size());
    parallel_for(0, int(coupled.size()), [&](int c) {
        psis[std::size_t(c)] = kdv_psi(sp, coupled[std::size_t(c)], K_sigma, opts);
    });

    // U[j-1][c] = band-j integral of psi_{k_c}.
    const int nc = int(coupled.size());
    std::vector<double> U(static_cast<std::size_t>(n_max) * static_cast<std::size_t>(std::max(nc, 1)), 0.0);
    parallel_for(0, n_max * nc, [&](int idx) {
        const int j = idx / nc + 1;
        const int c = idx % nc;
        U[std::size_t(idx)] =
            kdv_band_psi(sp, psis[std::size_t(c)], coupled[std::size_t(c)], j, opts);
    });

    std::vector<double> omega(static_cast<std::size_t>(n_max), 0.0);
    double acc_first = 0.0;
    std::vector<double> acc_U(static_cast<std::size_t>(std::max(nc, 1)), 0.0);
    for (int n = 1; n <= n_max; ++n) {
        acc_first += first[std::size_t(n - 1)];
        double corr = 0.0;
        for (int c = 0; c < nc; ++c) {
            acc_U[std::size_t(c)] += U[std::size_t(n - 1) * std::size_t(nc) + std::size_t(c)];
            corr += actions[std::size_t(coupled[std::size_t(c)] - 1)] * acc_U[std::size_t(c)];
        }
        omega[std::size_t(n - 1)] = -48.0 * acc_first + 24.0 * corr;
    }
    return omega;
}

double hkdv_reference(int N, int n, double omega_kdv) {
    const double twoN = 2.0 * double(N);
    return 2.0 * M_PI * double(n) / double(N) - omega_kdv / (24.0 * twoN * twoN * twoN);
}

}  // namespace todaspec
