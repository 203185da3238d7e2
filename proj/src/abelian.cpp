#include "todaspec/abelian.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "todaspec/errors.hpp"
#include "todaspec/parallel.hpp"
#include "todaspec/roots.hpp"

namespace todaspec {

namespace {

double gap_sign(int N, int k) { return ((N + 1 - k) % 2 == 0) ? 1.0 : -1.0; }

// sqrt+(Delta^2-4) = G(mu) sqrt((mu-l)(r-mu)) on a gap; G is smooth and
// positive across the closed gap.
double gap_G(const TodaState& state, double mu, double dl, double dr) {
    const double delta = discriminant(state, mu).delta;
    const double disc = delta * delta - 4.0;
    return std::sqrt(std::max(1e-300, disc / (dl * dr)));
}

// Fills values[j] = T_j(x) for j = 0..count-1 by the recurrence.
void chebyshev_row(double x, int count, double* values) {
    if (count <= 0) return;
    values[0] = 1.0;
    if (count == 1) return;
    values[1] = x;
    for (int j = 2; j < count; ++j) values[j] = 2.0 * x * values[j - 1] - values[j - 2];
}

// T_j and its first two x-derivatives for all j < count.
void chebyshev_row2(double x, int count, double* t, double* tp, double* tpp) {
    if (count <= 0) return;
    t[0] = 1.0;
    tp[0] = 0.0;
    tpp[0] = 0.0;
    if (count == 1) return;
    t[1] = x;
    tp[1] = 1.0;
    tpp[1] = 0.0;
    for (int j = 2; j < count; ++j) {
        t[j] = 2.0 * x * t[j - 1] - t[j - 2];
        tp[j] = 2.0 * t[j - 1] + 2.0 * x * tp[j - 1] - tp[j - 2];
        tpp[j] = 4.0 * tp[j - 1] + 2.0 * x * tpp[j - 1] - tpp[j - 2];
    }
}

// Gap-signal level below which the period-matrix row switches from
// quadrature to the second-order degenerate expansion: at the crossover the
// quadrature noise eps/(4s) and the expansion truncation O(s^2) are both
// around 1e-10.
constexpr double ROW_MODEL_EPS = 3e-5;

// Second-order expansion of the arcsine mean of T_j(mu/2)/G over a short
// gap around tau: with Delta^2-4 = (x^2-a^2) S(x), G^2 = -S and
// mean f = f(0) + (a^2/4) f''(0) + O(a^4).  Exact residue row at a = 0.
void degenerate_row(const TodaState& state, double tau, double half_gap, double sign,
                    int count, double* row) {
    const auto jet = discriminant_jet(state, tau);
    const double D2 = 2.0 * (jet.d[1] * jet.d[1] + jet.d[0] * jet.d[2]);
    const double D3 = 2.0 * (3.0 * jet.d[1] * jet.d[2] + jet.d[0] * jet.d[3]);
    const double D4 = 2.0 * (3.0 * jet.d[2] * jet.d[2] + 4.0 * jet.d[1] * jet.d[3] +
                             jet.d[0] * jet.d[4]);
    const double a2 = half_gap * half_gap;
    const double s2 = D4 / 12.0;
    const double s1 = D3 / 6.0;
    const double s0 = 0.5 * D2 + 0.5 * a2 * s2;
    if (!(s0 < 0.0)) throw SingularPeriodMatrix("degenerate_row: nonnegative S(0)");
    const double Q0 = 1.0 / std::sqrt(-s0);
    const double QpQ = -s1 / (2.0 * s0);
    const double QppQ = 0.75 * (s1 / s0) * (s1 / s0) - s2 / (2.0 * s0);
    std::vector<double> t(static_cast<std::size_t>(count)), tp(static_cast<std::size_t>(count)),
        tpp(static_cast<std::size_t>(count));
    chebyshev_row2(tau / 2.0, count, t.data(), tp.data(), tpp.data());
    for (int j = 0; j < count; ++j) {
        const double P = t[std::size_t(j)];
        const double Pp = 0.5 * tp[std::size_t(j)];
        const double Ppp = 0.25 * tpp[std::size_t(j)];
        row[j] = sign * Q0 * (P + 0.25 * a2 * (Ppp + 2.0 * Pp * QpQ + P * QppQ));
    }
}

// Row of the period matrix for an open gap: vector-valued adaptive
// Gauss-Chebyshev of T_j(mu/2)/G over the gap.
void open_gap_row(const TodaState& state, double l, double r, double sign, int count,
                  const QuadratureOptions& opts, double* row) {
    const double mid = 0.5 * (l + r);
    const double half = 0.5 * (r - l);
    std::vector<double> sum(static_cast<std::size_t>(count)), prev(static_cast<std::size_t>(count));
    std::vector<double> cheb(static_cast<std::size_t>(count));
    int m = opts.initial_nodes;
    bool have_prev = false;
    double prev_diff = std::numeric_limits<double>::infinity();
    while (true) {
        std::fill(sum.begin(), sum.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double theta = M_PI * (2.0 * double(i) + 1.0) / (2.0 * double(m));
            const double sh = std::sin(0.5 * theta);
            const double ch = std::cos(0.5 * theta);
            const double mu = mid + half * std::cos(theta);
            const double dl = 2.0 * half * ch * ch;
            const double dr = 2.0 * half * sh * sh;
            const double w = 1.0 / gap_G(state, mu, dl, dr);
            chebyshev_row(mu / 2.0, count, cheb.data());
            for (int j = 0; j < count; ++j) sum[std::size_t(j)] += w * cheb[std::size_t(j)];
        }
        double scale = 0.0, diff = 0.0;
        for (int j = 0; j < count; ++j) {
            sum[std::size_t(j)] /= double(m);
            scale = std::max(scale, std::fabs(sum[std::size_t(j)]));
            if (have_prev) diff = std::max(diff, std::fabs(sum[std::size_t(j)] - prev[std::size_t(j)]));
        }
        scale = std::max(scale, 1e-300);
        if (have_prev && diff <= opts.rel_tol * scale) break;
        if (have_prev && diff > 0.5 * prev_diff && diff <= opts.stall_tol * scale) break;
        if (2 * m > opts.max_nodes)
            throw NoConvergence("period_matrix: row quadrature exceeded max_nodes");
        prev = sum;
        if (have_prev) prev_diff = diff;
        have_prev = true;
        m *= 2;
    }
    for (int j = 0; j < count; ++j) row[j] = sign * sum[std::size_t(j)];
}

}  // namespace

PeriodMatrix period_matrix(const TodaState& state, const SpectrumN& sp,
                           const QuadratureOptions& opts) {
    const int N = sp.N;
    const int dim = N - 1;
    PeriodMatrix pm;
    pm.N = N;
    pm.A.assign(std::size_t(dim) * std::size_t(dim), 0.0);
    pm.closed_row.assign(std::size_t(dim), 0);

    parallel_for(1, dim + 1, [&](int k) {
        double* row = pm.A.data() + std::size_t(k - 1) * std::size_t(dim);
        const double sign = gap_sign(N, k);
        // Below the gap-signal crossover the quadrature of Delta^2 - 4 is
        // noise-limited; the expansion row is then the accurate evaluation.
        const bool model_row =
            sp.closed[std::size_t(k - 1)] || gap_center_excess(state, sp, k) < ROW_MODEL_EPS;
        if (model_row) {
            pm.closed_row[std::size_t(k - 1)] = 1;
            degenerate_row(state, sp.tau[std::size_t(k - 1)],
                           0.5 * sp.gap_len[std::size_t(k - 1)], sign, dim, row);
        } else {
            open_gap_row(state, sp.gap_lo(k), sp.gap_hi(k), sign, dim, opts, row);
        }
    });

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(
        pm.A.data(), dim, dim);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    pm.rcond = lu.rcond();
    return pm;
}

DifferentialBasis psi_basis(const TodaState& state, const SpectrumN& sp, const PeriodMatrix& pm) {
    const int N = sp.N;
    const int dim = N - 1;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(
        pm.A.data(), dim, dim);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (!(lu.rcond() > 1e-15))
        throw SingularPeriodMatrix("psi_basis: period matrix reciprocal condition " +
                                   std::to_string(lu.rcond()));
    const Eigen::MatrixXd X = lu.solve(Eigen::MatrixXd::Identity(dim, dim));
    const Eigen::MatrixXd R = A * X - Eigen::MatrixXd::Identity(dim, dim);

    DifferentialBasis basis;
    basis.N = N;
    basis.rcond = lu.rcond();
    basis.solve_residual = R.cwiseAbs().maxCoeff();
    basis.coeffs.assign(std::size_t(dim) * std::size_t(dim), 0.0);
    basis.freq.assign(std::size_t(dim), 0.0);
    for (int n = 1; n <= dim; ++n) {
        for (int j = 0; j < dim; ++j)
            basis.coeffs[std::size_t(n - 1) * std::size_t(dim) + std::size_t(j)] = X(j, n - 1);
        // T_{N-2}(mu/2) = 2^{N-3} (mu/2)^{N-2} + ... has leading
        // mu-coefficient 1/2, so omega_n = q_N * c_n[N-2] / 2.
        const double omega = state.prod_q * X(dim - 1, n - 1) / 2.0;
        if (!(omega > 0.0))
            throw SingularPeriodMatrix("psi_basis: nonpositive frequency at n = " +
                                       std::to_string(n));
        basis.freq[std::size_t(n - 1)] = omega;
    }
    return basis;
}

namespace {

std::pair<double, double> clenshaw_with_derivative(const double* c, int count, double x) {
    // T series by Clenshaw; derivative via d/dx T_j = j U_{j-1}.
    double b1 = 0.0, b2 = 0.0;
    for (int j = count - 1; j >= 1; --j) {
        const double b0 = c[j] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    const double value = c[0] + x * b1 - b2;
    double u1 = 0.0, u2 = 0.0;  // U series with coefficients j*c[j]
    for (int j = count - 1; j >= 1; --j) {
        const double u0 = double(j) * c[j] + 2.0 * x * u1 - u2;
        u2 = u1;
        u1 = u0;
    }
    return {value, u1};
}

}  // namespace

double psi_eval(const DifferentialBasis& basis, int n, double mu) {
    return psi_eval_deriv(basis, n, mu).first;
}

std::pair<double, double> psi_eval_deriv(const DifferentialBasis& basis, int n, double mu) {
    const int dim = basis.N - 1;
    const double* c = basis.coeffs.data() + std::size_t(n - 1) * std::size_t(dim);
    auto [v, du] = clenshaw_with_derivative(c, dim, mu / 2.0);
    return {v, du / 2.0};  // chain rule for x = mu/2
}

std::vector<double> phi_zeros(const DifferentialBasis& basis, const SpectrumN& sp, int n) {
    const int N = sp.N;
    std::vector<double> zeros;
    zeros.reserve(std::size_t(N - 2));
    for (int k = 1; k <= N - 1; ++k) {
        if (k == n) continue;
        if (sp.closed[std::size_t(k - 1)]) {
            zeros.push_back(sp.tau[std::size_t(k - 1)]);
            continue;
        }
        double lo = sp.gap_lo(k), hi = sp.gap_hi(k);
        auto f = [&basis, n](double mu) { return psi_eval_deriv(basis, n, mu); };
        double flo = f(lo).first, fhi = f(hi).first;
        if ((flo > 0.0) == (fhi > 0.0)) {
            // Fine interior scan before giving up; the zero may sit very
            // close to an endpoint.
            bool found = false;
            const int grid = 64;
            double xp = lo, fp = flo;
            for (int i = 1; i <= grid && !found; ++i) {
                const double x = lo + (hi - lo) * double(i) / double(grid);
                const double fx = f(x).first;
                if ((fx > 0.0) != (fp > 0.0)) {
                    lo = xp;
                    flo = fp;
                    hi = x;
                    fhi = fx;
                    found = true;
                }
                xp = x;
                fp = fx;
            }
            if (!found)
                throw RootCountMismatch("phi_zeros: no sign change of psi_" + std::to_string(n) +
                                        " in gap " + std::to_string(k));
        }
        zeros.push_back(find_root(f, lo, hi, flo, fhi));
    }
    return zeros;
}

double gap_cycle_integral(const TodaState& state, const SpectrumN& sp, int k,
                          const std::function<double(double)>& f, const QuadratureOptions& opts) {
    if (k < 1 || k > sp.N - 1) throw Error("gap_cycle_integral: gap index out of range");
    if (sp.closed[std::size_t(k - 1)])
        throw ClosedGap("gap_cycle_integral: gap " + std::to_string(k) +
                        " is below the degeneracy threshold");
    const double sign = gap_sign(sp.N, k);
    const double mean = chebyshev_singular_mean(
        sp.gap_lo(k), sp.gap_hi(k),
        [&](double mu, double dl, double dr) { return f(mu) / gap_G(state, mu, dl, dr); }, opts);
    return sign * mean / state.prod_q;
}

namespace {

constexpr double ARCCOS_FAIL = 1e-10;

double checked_arccos(double raw, int band) {
    if (std::fabs(raw) > 1.0 + ARCCOS_FAIL)
        throw Error("band integral: arccos argument " + std::to_string(raw) +
                    " out of range on band " + std::to_string(band));
    return std::acos(std::min(1.0, std::max(-1.0, raw)));
}

}  // namespace

double band_integral_first_kind(const TodaState& state, const SpectrumN& sp, int j,
                                const QuadratureOptions& opts) {
    if (j < 1 || j > sp.N) throw Error("band_integral_first_kind: band index out of range");
    const int N = sp.N;
    const double sign = ((N + j) % 2 == 0) ? 1.0 : -1.0;
    const double arc = cosine_plain_integral(
        sp.band_lo(j), sp.band_hi(j),
        [&](double mu, double, double) {
            return checked_arccos(sign * discriminant(state, mu).delta / 2.0, j);
        },
        opts);
    const double shift = state.trace_p / double(N);
    return -M_PI * (sp.band_lo(j) - shift) - arc;
}

double band_integral_phi(const SpectrumN& sp, const std::vector<double>& sigma_k, int k, int j,
                         const QuadratureOptions& opts) {
    const int N = sp.N;
    if (j < 1 || j > N) throw Error("band_integral_phi: band index out of range");
    if (int(sigma_k.size()) != N - 2) throw Error("band_integral_phi: sigma size mismatch");
    const double l = sp.band_lo(j), r = sp.band_hi(j);
    // Stable distance to an eigenvalue (or sigma) that lies left of l or
    // right of r, given the in-band distances dl, dr.
    auto dist = [&](double x, double mu, double dl, double dr) {
        if (x <= l) return dl + (l - x);
        if (x >= r) return dr + (x - r);
        return std::fabs(x - mu);  // only for data straddling a tiny band
    };
    const double mean = chebyshev_singular_mean(
        l, r,
        [&](double mu, double dl, double dr) {
            double S = 0.0;
            for (double s : sigma_k) S += std::log(dist(s, mu, dl, dr));
            for (int i = 0; i < 2 * N; ++i) {
                if (i == 2 * j - 2 || i == 2 * j - 1) continue;
                S -= 0.5 * std::log(dist(sp.lambda[std::size_t(i)], mu, dl, dr));
            }
            return std::exp(S);
        },
        opts);
    const double s = (k >= j) ? 1.0 : -1.0;
    return s * M_PI * mean;
}

std::vector<double> frequencies_via_B5(const TodaState& state, const SpectrumN& sp,
                                       const DifferentialBasis& basis, const ActionSet& actions,
                                       const QuadratureOptions& opts) {
    const int N = sp.N;
    const int dim = N - 1;

    // The phi_k band integrals are weighted by the small actions I_k, so
    // modest relative accuracy suffices; bands bordering near-closed gaps
    // would otherwise force enormous node counts.
    QuadratureOptions phi_opts = opts;
    phi_opts.rel_tol = std::max(opts.rel_tol, 1e-9);
    phi_opts.stall_tol = std::max(opts.stall_tol, 1e-5);
    phi_opts.initial_nodes = std::max(opts.initial_nodes, 32);

    // First-kind band integrals, cumulative over j <= n.
    std::vector<double> bif(static_cast<std::size_t>(N));
    parallel_for(1, N + 1, [&](int j) {
        bif[std::size_t(j - 1)] = band_integral_first_kind(state, sp, j, opts);
    });
    std::vector<double> F(static_cast<std::size_t>(dim), 0.0);
    {
        double acc = 0.0;
        for (int n = 1; n <= dim; ++n) {
            acc += bif[std::size_t(n - 1)];
            F[std::size_t(n - 1)] = acc;
        }
    }

    // Open gaps with nonnegligible action contribute to the coupling term.
    std::vector<int> coupled;
    for (int k = 1; k <= dim; ++k)
        if (!sp.closed[std::size_t(k - 1)] && actions.I[std::size_t(k - 1)] > 1e-19)
            coupled.push_back(k);

    Eigen::MatrixXd M = double(N) * Eigen::MatrixXd::Identity(dim, dim);
    if (!coupled.empty()) {
        // B[j-1][c] = band integral of phi_{k_c}; fill per (j, c) in parallel.
        const int nc = int(coupled.size());
        std::vector<double> B(static_cast<std::size_t>(N) * static_cast<std::size_t>(nc), 0.0);
        std::vector<std::vector<double>> sigma(static_cast<std::size_t>(nc));
        parallel_for(0, nc, [&](int c) {
            sigma[std::size_t(c)] = phi_zeros(basis, sp, coupled[std::size_t(c)]);
        });
        parallel_for(0, N * nc, [&](int idx) {
            const int j = idx / nc + 1;
            const int c = idx % nc;
            B[std::size_t(idx)] = band_integral_phi(sp, sigma[std::size_t(c)],
                                                    coupled[std::size_t(c)], j, opts);
        });
        for (int c = 0; c < nc; ++c) {
            const int k = coupled[std::size_t(c)];
            const double Ik = actions.I[std::size_t(k - 1)];
            double acc = 0.0;
            for (int n = 1; n <= dim; ++n) {
                acc += B[std::size_t(n - 1) * std::size_t(nc) + std::size_t(c)];
                M(n - 1, k - 1) += Ik * acc;
            }
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    if (!(lu.rcond() > 1e-15))
        throw SingularSystem("frequencies_via_B5: frequency system reciprocal condition " +
                             std::to_string(lu.rcond()));
    const Eigen::VectorXd Fv = Eigen::Map<const Eigen::VectorXd>(F.data(), dim);
    const Eigen::VectorXd w = lu.solve(Fv);
    std::vector<double> omega(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) {
        if (!std::isfinite(w(n)))
            throw SingularSystem("frequencies_via_B5: nonfinite frequency component");
        omega[std::size_t(n)] = w(n);
    }
    return omega;
}

double normalization_residual(const TodaState& state, const SpectrumN& sp,
                              const DifferentialBasis& basis, const QuadratureOptions& opts) {
    const int N = sp.N;
    const int dim = N - 1;
    QuadratureOptions dense = opts;
    dense.initial_nodes = 2 * opts.initial_nodes;
    const PeriodMatrix recheck = period_matrix(state, sp, dense);
    double worst = 0.0;
    for (int k = 1; k <= dim; ++k)
        for (int n = 1; n <= dim; ++n) {
            double v = 0.0;
            for (int j = 0; j < dim; ++j) v += recheck.at(k - 1, j) * basis.coeff(n, j);
            worst = std::max(worst, std::fabs(v - (k == n ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace todaspec
