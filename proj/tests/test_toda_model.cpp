#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "todaspec/errors.hpp"
#include "todaspec/jacobi_spectral.hpp"
#include "todaspec/toda_model.hpp"

using namespace todaspec;

TEST_CASE("discretize: equilibrium and direct substitution") {
    const auto zero = FourierProfile::zero();
    const auto eq = discretize(zero, zero, 8);
    for (int n = 0; n < 8; ++n) {
        CHECK(eq.b[size_t(n)] == 0.0);
        CHECK(eq.a[size_t(n)] == 1.0);
    }
    CHECK(eq.trace_p == 0.0);
    CHECK(eq.prod_q == 1.0);

    // alpha = cos 2 pi x, N = 4: a_n = 1 + cos(pi n / 2)/64.
    const auto s = discretize(FourierProfile::cosine(1, 1.0), zero, 4);
    CHECK(s.a[0] == doctest::Approx(1.0 + std::cos(M_PI / 2.0) / 64.0).epsilon(1e-15));
    CHECK(s.a[1] == doctest::Approx(1.0 - 1.0 / 64.0).epsilon(1e-15));
    CHECK(s.a[2] == doctest::Approx(1.0 + std::cos(3.0 * M_PI / 2.0) / 64.0).epsilon(1e-15));
    CHECK(s.a[3] == doctest::Approx(1.0 + 1.0 / 64.0).epsilon(1e-15));
}

TEST_CASE("discretize: trace matches direct summation oracle") {
    const auto alpha = FourierProfile::cosine(1, 1.0);
    const auto beta = FourierProfile::sine(1, 1.0);
    const int N = 64;
    const auto s = discretize(alpha, beta, N);
    double direct = 0.0;
    for (int n = 1; n <= N; ++n) direct += std::sin(2.0 * M_PI * n / double(N)) / (4.0 * N * N);
    CHECK(s.trace_p == doctest::Approx(direct).epsilon(1e-15));
    // Pointwise: b_n = beta(n/N)/(4N^2) exactly as evaluated.
    for (int n = 1; n <= N; ++n)
        CHECK(s.b[size_t(n - 1)] ==
              doctest::Approx(std::sin(2.0 * M_PI * n / double(N)) / (4.0 * N * N)).epsilon(1e-15));
}

TEST_CASE("discretize rejects overlarge profiles") {
    CHECK_THROWS_AS(discretize(FourierProfile::cosine(1, -40.0), FourierProfile::zero(), 3),
                    NonPositiveA);
}

TEST_CASE("discretize_pq: equilibrium, closeness, and symbolic spot value") {
    const auto zero = FourierProfile::zero();
    const auto eq = discretize_pq(zero, zero, 16);
    for (int n = 0; n < 16; ++n) CHECK(eq.a[size_t(n)] == 1.0);

    // max |c_n - a_n| = O(N^-3): measure at N = 64, confirm >= 6x shrink at 128.
    const auto alpha = FourierProfile::cosine(1, 1.0);
    auto maxdiff = [&](int N) {
        const auto d1 = discretize(alpha, zero, N);
        const auto d2 = discretize_pq(alpha, zero, N);
        double m = 0.0;
        for (int n = 0; n < N; ++n)
            m = std::max(m, std::fabs(d1.a[size_t(n)] - d2.a[size_t(n)]));
        return m;
    };
    const double m64 = maxdiff(64), m128 = maxdiff(128);
    CHECK(m64 < 2.0 / (64.0 * 64.0 * 64.0));
    CHECK(m128 * 6.0 <= m64);

    // alpha = sin 4 pi x, N = 32: xi(x) = -cos(4 pi x)/(4 pi);
    // c_1 = exp((xi(2/32) - xi(1/32))/(4*32)).
    const auto a2 = FourierProfile::sine(2, 1.0);
    const auto pq = discretize_pq(a2, zero, 32);
    auto xi = [](double x) { return -std::cos(4.0 * M_PI * x) / (4.0 * M_PI); };
    const double expected = std::exp((xi(2.0 / 32.0) - xi(1.0 / 32.0)) / (4.0 * 32.0));
    CHECK(pq.a[0] == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("reflect: involution and derived scalars") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int trial = 0; trial < 5; ++trial) {
        const int N = 5 + trial;
        std::vector<double> b(static_cast<std::size_t>(N)), a(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n) {
            b[size_t(n)] = u(rng);
            a[size_t(n)] = 1.0 + u(rng);
        }
        const auto s = make_state(b, a);
        const auto r = reflect(s);
        const auto rr = reflect(r);
        for (int n = 0; n < N; ++n) {
            CHECK(rr.b[size_t(n)] == s.b[size_t(n)]);
            CHECK(rr.a[size_t(n)] == s.a[size_t(n)]);
        }
        CHECK(r.trace_p == doctest::Approx(-s.trace_p).epsilon(1e-14));
        CHECK(r.prod_q == doctest::Approx(s.prod_q).epsilon(1e-14));
    }
    // Equilibrium is a fixed point.
    const auto eq = equilibrium_state(6);
    const auto req = reflect(eq);
    for (int n = 0; n < 6; ++n) CHECK(req.a[size_t(n)] == 1.0);
}

TEST_CASE("potentials: q_pm = -2 alpha(2x) -+ beta(2x)") {
    const auto zero = FourierProfile::zero();
    const auto [z1, z2] = potentials(zero, zero);
    CHECK(z1.is_zero());
    CHECK(z2.is_zero());

    const auto [qm, qp] = potentials(FourierProfile::cosine(1, 1.0), zero);
    for (double x : {0.0, 0.13, 0.31, 0.49}) {
        CHECK(qm(x) == doctest::Approx(-2.0 * std::cos(4.0 * M_PI * x)).epsilon(1e-14));
        CHECK(qp(x) == doctest::Approx(-2.0 * std::cos(4.0 * M_PI * x)).epsilon(1e-14));
    }

    const auto beta = FourierProfile::sine(1, 1.0);
    const auto [qm2, qp2] = potentials(zero, beta);
    for (double x : {0.07, 0.22, 0.41}) {
        CHECK(qm2(x) == doctest::Approx(-std::sin(4.0 * M_PI * x)).epsilon(1e-14));
        CHECK(qp2(x) == doctest::Approx(std::sin(4.0 * M_PI * x)).epsilon(1e-14));
    }

    // Reflection identity: reflected profiles give qt_-(-x) = q_+(x).
    const auto alpha = FourierProfile::cosine(1, 0.7);
    const auto at = alpha.parity_flip();
    const auto bt = beta.negated_parity_flip();
    const auto [qmt, qpt] = potentials(at, bt);
    const auto [qm3, qp3] = potentials(alpha, beta);
    (void)qpt;
    (void)qm3;
    for (double x : {0.03, 0.17, 0.33, 0.47})
        CHECK(qmt(-x) == doctest::Approx(qp3(x)).epsilon(1e-13));
}

TEST_CASE("lax_matrices: structure, equilibrium spectrum, commutator") {
    const auto eq3 = equilibrium_state(3);
    const auto lp3 = lax_matrices(eq3);
    const auto ev = oracle::jacobi_eigenvalues(lp3.L, 3);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-12));

    // Equilibrium: [B, L] = 0 entrywise below 1e-14.
    const int N = 6;
    const auto eq = equilibrium_state(N);
    const auto lp = lax_matrices(eq);
    auto commutator = [N](const std::vector<double>& B, const std::vector<double>& L) {
        std::vector<double> C(static_cast<std::size_t>(N) * static_cast<std::size_t>(N), 0.0);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k)
                for (int j = 0; j < N; ++j)
                    C[size_t(i) * size_t(N) + size_t(j)] +=
                        B[size_t(i) * size_t(N) + size_t(k)] * L[size_t(k) * size_t(N) + size_t(j)] -
                        L[size_t(i) * size_t(N) + size_t(k)] * B[size_t(k) * size_t(N) + size_t(j)];
        return C;
    };
    for (double c : commutator(lp.B, lp.L)) CHECK(std::fabs(c) < 1e-14);

    // Any state: [B, L] symmetric with zero trace.
    const auto s = discretize(FourierProfile::cosine(1, 0.9), FourierProfile::sine(1, 0.8), N);
    const auto lps = lax_matrices(s);
    const auto C = commutator(lps.B, lps.L);
    double trace = 0.0;
    for (int i = 0; i < N; ++i) {
        trace += C[size_t(i) * size_t(N) + size_t(i)];
        for (int j = 0; j < N; ++j)
            CHECK(C[size_t(i) * size_t(N) + size_t(j)] ==
                  doctest::Approx(C[size_t(j) * size_t(N) + size_t(i)]).epsilon(1e-13));
    }
    CHECK(std::fabs(trace) < 1e-14);
}

TEST_CASE("evolve_lax: equilibrium fixed point and isospectral drift") {
    const auto eq = equilibrium_state(6);
    const auto traj = evolve_lax(eq, 0.5, 1e-2);
    const auto& last = traj.back();
    for (int n = 0; n < 6; ++n) {
        CHECK(std::fabs(last.b[size_t(n)]) < 1e-12);
        CHECK(std::fabs(last.a[size_t(n)] - 1.0) < 1e-12);
    }

    // Perturbed N = 8 chain: eigenvalues of Q_N drift < 1e-8 over t = 1,
    // and halving dt improves the drift roughly 16x (4th-order method).
    const auto s0 = discretize(FourierProfile::cosine(1, 40.0), FourierProfile::sine(1, 40.0), 8);
    const auto sp0 = eigenvalues_Q(s0);
    auto drift = [&](double dt) {
        const auto traj2 = evolve_lax(s0, 1.0, dt);
        const auto sp1 = eigenvalues_Q(traj2.back());
        double d = 0.0;
        for (size_t i = 0; i < sp0.lambda.size(); ++i)
            d = std::max(d, std::fabs(sp0.lambda[i] - sp1.lambda[i]));
        return d;
    };
    CHECK(drift(1e-3) < 1e-8);
    // Richardson check on coarser steps where truncation dominates roundoff.
    const double dc = drift(0.02), df = drift(0.01);
    CHECK(df > 0.0);
    const double ratio = dc / df;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}
