#include "todaspec/toda_model.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "todaspec/errors.hpp"

namespace todaspec {

TodaState make_state(std::vector<double> b, std::vector<double> a) {
    if (b.size() != a.size()) throw Error("make_state: b and a must have equal length");
    const int N = int(b.size());
    if (N < 3) throw Error("make_state: N must be >= 3");
    TodaState s;
    s.N = N;
    s.b = std::move(b);
    s.a = std::move(a);
    s.recip_a.resize(std::size_t(N));
    double tr = 0.0, lq = 0.0, pq = 1.0;
    for (int n = 0; n < N; ++n) {
        if (!(s.a[std::size_t(n)] > 0.0))
            throw NonPositiveA("make_state: a_" + std::to_string(n + 1) + " <= 0");
        s.recip_a[std::size_t(n)] = 1.0 / s.a[std::size_t(n)];
        tr += s.b[std::size_t(n)];
        pq *= s.a[std::size_t(n)];
        lq += std::log(s.a[std::size_t(n)]);
    }
    s.trace_p = tr;
    s.prod_q = pq;
    s.log_prod_q = lq;
    return s;
}

TodaState equilibrium_state(int N, double r, double s) {
    return make_state(std::vector<double>(static_cast<std::size_t>(N), r),
                      std::vector<double>(static_cast<std::size_t>(N), s));
}

TodaState discretize(const FourierProfile& alpha, const FourierProfile& beta, int N) {
    if (N < 3) throw Error("discretize: N must be >= 3");
    const double scale = 1.0 / (4.0 * double(N) * double(N));
    std::vector<double> b(static_cast<std::size_t>(N)), a(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
        const double x = double(n) / double(N);
        b[std::size_t(n - 1)] = scale * beta(x);
        const double an = 1.0 + scale * alpha(x);
        if (!(an > 0.0))
            throw NonPositiveA("discretize: 1 + alpha(" + std::to_string(n) + "/" +
                               std::to_string(N) + ")/(4N^2) <= 0");
        a[std::size_t(n - 1)] = an;
    }
    return make_state(std::move(b), std::move(a));
}

TodaState discretize_pq(const FourierProfile& alpha, const FourierProfile& beta, int N) {
    if (N < 3) throw Error("discretize_pq: N must be >= 3");
    const double scale = 1.0 / (4.0 * double(N) * double(N));
    std::vector<double> b(static_cast<std::size_t>(N)), a(static_cast<std::size_t>(N));
    // q_n = -(2/4N) xi(n/N) so (q_n - q_{n+1})/2 = (xi((n+1)/N) - xi(n/N))/(4N).
    for (int n = 1; n <= N; ++n) {
        b[std::size_t(n - 1)] = scale * beta(double(n) / double(N));
        const double dxi =
            alpha.antiderivative(double(n + 1) / double(N)) - alpha.antiderivative(double(n) / double(N));
        a[std::size_t(n - 1)] = std::exp(dxi / (4.0 * double(N)));
    }
    return make_state(std::move(b), std::move(a));
}

TodaState reflect(const TodaState& state) {
    const int N = state.N;
    std::vector<double> b(static_cast<std::size_t>(N)), a(static_cast<std::size_t>(N));
    auto wrap = [N](int i) { return ((i % N) + N) % N; };
    for (int n = 1; n <= N; ++n) {
        // bt_n = -b_{N-n}, at_n = a_{N-1-n}; paper indices mod N, 1-based, so
        // paper entry m lives at storage slot wrap(m-1).
        b[std::size_t(n - 1)] = -state.b[std::size_t(wrap(N - n - 1))];
        a[std::size_t(n - 1)] = state.a[std::size_t(wrap(N - n - 2))];
    }
    return make_state(std::move(b), std::move(a));
}

LaxPair lax_matrices(const TodaState& state) {
    const int N = state.N;
    LaxPair lp;
    lp.N = N;
    lp.L.assign(std::size_t(N) * std::size_t(N), 0.0);
    lp.B.assign(std::size_t(N) * std::size_t(N), 0.0);
    auto L = [&lp, N](int i, int j) -> double& { return lp.L[std::size_t(i) * std::size_t(N) + std::size_t(j)]; };
    auto B = [&lp, N](int i, int j) -> double& { return lp.B[std::size_t(i) * std::size_t(N) + std::size_t(j)]; };
    for (int n = 0; n < N; ++n) L(n, n) = state.b[std::size_t(n)];
    for (int n = 0; n + 1 < N; ++n) {
        const double an = state.a[std::size_t(n)];
        L(n, n + 1) = L(n + 1, n) = an;
        B(n, n + 1) = an;
        B(n + 1, n) = -an;
    }
    const double aN = state.a[std::size_t(N - 1)];
    L(0, N - 1) = L(N - 1, 0) = aN;
    B(0, N - 1) = -aN;
    B(N - 1, 0) = aN;
    return lp;
}

namespace {

// (b, a) read back from the diagonal / first off-diagonal (+ corner) of a
// dense symmetric matrix.
void extract_state(const std::vector<double>& L, int N, std::vector<double>& b,
                   std::vector<double>& a) {
    b.resize(std::size_t(N));
    a.resize(std::size_t(N));
    for (int n = 0; n < N; ++n) b[std::size_t(n)] = L[std::size_t(n) * std::size_t(N) + std::size_t(n)];
    for (int n = 0; n + 1 < N; ++n) a[std::size_t(n)] = L[std::size_t(n) * std::size_t(N) + std::size_t(n + 1)];
    a[std::size_t(N - 1)] = L[std::size_t(N - 1)];  // entry (0, N-1)
}

// K = B(a(L)) L - L B(a(L)) for a dense symmetric L with Jacobi sparsity.
void lax_derivative(const std::vector<double>& L, int N, std::vector<double>& K,
                    std::vector<double>& scratch_b, std::vector<double>& scratch_a) {
    extract_state(L, N, scratch_b, scratch_a);
    std::vector<double> B(static_cast<std::size_t>(N) * static_cast<std::size_t>(N), 0.0);
    for (int n = 0; n + 1 < N; ++n) {
        B[std::size_t(n) * std::size_t(N) + std::size_t(n + 1)] = scratch_a[std::size_t(n)];
        B[std::size_t(n + 1) * std::size_t(N) + std::size_t(n)] = -scratch_a[std::size_t(n)];
    }
    B[std::size_t(N - 1)] = -scratch_a[std::size_t(N - 1)];
    B[std::size_t(N - 1) * std::size_t(N)] = scratch_a[std::size_t(N - 1)];
    K.assign(std::size_t(N) * std::size_t(N), 0.0);
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            const double bik = B[std::size_t(i) * std::size_t(N) + std::size_t(k)];
            const double lik = L[std::size_t(i) * std::size_t(N) + std::size_t(k)];
            if (bik == 0.0 && lik == 0.0) continue;
            for (int j = 0; j < N; ++j) {
                K[std::size_t(i) * std::size_t(N) + std::size_t(j)] +=
                    bik * L[std::size_t(k) * std::size_t(N) + std::size_t(j)] -
                    lik * B[std::size_t(k) * std::size_t(N) + std::size_t(j)];
            }
        }
}

}  // namespace

std::vector<TodaState> evolve_lax(const TodaState& state, double t_final, double dt,
                                  int sample_stride) {
    if (!(dt > 0.0)) throw Error("evolve_lax: dt must be > 0");
    if (t_final < 0.0) throw Error("evolve_lax: t_final must be >= 0");
    const int N = state.N;
    const long steps = long(std::ceil(t_final / dt - 1e-12));

    std::vector<TodaState> samples;
    samples.push_back(state);
    if (steps == 0) return samples;

    std::vector<double> L = lax_matrices(state).L;
    std::vector<double> k1, k2, k3, k4, tmp, sb, sa;
    const std::size_t sz = L.size();

    for (long step = 0; step < steps; ++step) {
        const double h = dt;
        lax_derivative(L, N, k1, sb, sa);
        tmp = L;
        for (std::size_t i = 0; i < sz; ++i) tmp[i] = L[i] + 0.5 * h * k1[i];
        lax_derivative(tmp, N, k2, sb, sa);
        for (std::size_t i = 0; i < sz; ++i) tmp[i] = L[i] + 0.5 * h * k2[i];
        lax_derivative(tmp, N, k3, sb, sa);
        for (std::size_t i = 0; i < sz; ++i) tmp[i] = L[i] + h * k3[i];
        lax_derivative(tmp, N, k4, sb, sa);
        for (std::size_t i = 0; i < sz; ++i)
            L[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        // Re-symmetrize, then project back onto the cyclic Jacobi pattern.
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                const double m = 0.5 * (L[std::size_t(i) * std::size_t(N) + std::size_t(j)] +
                                        L[std::size_t(j) * std::size_t(N) + std::size_t(i)]);
                L[std::size_t(i) * std::size_t(N) + std::size_t(j)] = m;
                L[std::size_t(j) * std::size_t(N) + std::size_t(i)] = m;
            }
        extract_state(L, N, sb, sa);
        for (int n = 0; n < N; ++n)
            if (!(sa[std::size_t(n)] > 0.0))
                throw StepRejected("evolve_lax: a_" + std::to_string(n + 1) +
                                   " <= 0 at step " + std::to_string(step + 1));
        TodaState cur = make_state(sb, sa);
        L = lax_matrices(cur).L;

        const bool last = (step + 1 == steps);
        if (last || (sample_stride > 0 && (step + 1) % sample_stride == 0))
            samples.push_back(std::move(cur));
    }
    return samples;
}

}  // namespace todaspec
