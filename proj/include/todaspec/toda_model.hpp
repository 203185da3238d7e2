#pragma once
#include <vector>

#include "todaspec/profiles.hpp"

namespace todaspec {

/// Flaschka variables (b, a) of a periodic chain with N particles, plus the
/// derived scalars p_N = sum b_n and q_N = prod a_n.  Values are immutable
/// after construction; every operation below is a pure function.
struct TodaState {
    int N = 0;
    std::vector<double> b;        ///< diagonal entries, b_1..b_N at index 0..N-1
    std::vector<double> a;        ///< off-diagonal entries, all > 0
    std::vector<double> recip_a;  ///< 1/a_n, cached for the transfer recursion
    double trace_p = 0.0;         ///< p_N = sum_n b_n
    double prod_q = 1.0;          ///< q_N = prod_n a_n
    double log_prod_q = 0.0;      ///< log q_N, accumulated termwise
};

/// Validates N >= 3 and a_n > 0 and fills the derived fields.
TodaState make_state(std::vector<double> b, std::vector<double> a);

/// Equilibrium chain b = r 1_N, a = s 1_N.
TodaState equilibrium_state(int N, double r = 0.0, double s = 1.0);

/// b_n = beta(n/N)/(4N^2), a_n = 1 + alpha(n/N)/(4N^2).
/// Throws NonPositiveA when some a_n <= 0.
TodaState discretize(const FourierProfile& alpha, const FourierProfile& beta, int N);

/// Position/momentum discretization: d_n = b_n and
/// c_n = exp((q_n - q_{n+1})/2) with q_n = -(2/4N) xi(n/N), xi' = alpha,
/// xi mean zero.  Agrees with discretize up to O(N^-3) in the a-entries.
TodaState discretize_pq(const FourierProfile& alpha, const FourierProfile& beta, int N);

/// The chain reflection bt_n = -b_{N-n}, at_n = a_{N-1-n} (indices mod N).
TodaState reflect(const TodaState& state);

/// Dense N x N Lax matrices: L symmetric periodic Jacobi, B antisymmetric.
struct LaxPair {
    int N = 0;
    std::vector<double> L;  ///< row-major N*N
    std::vector<double> B;  ///< row-major N*N
};

LaxPair lax_matrices(const TodaState& state);

/// Integrates dL/dt = BL - LB with a classical 4th-order one-step method,
/// re-symmetrizing L and re-extracting (b, a) after every step.  Returns the
/// states sampled every sample_stride steps (always includes t = 0 and the
/// final time; sample_stride = 0 keeps endpoints only).
/// Throws StepRejected if an off-diagonal entry becomes nonpositive.
std::vector<TodaState> evolve_lax(const TodaState& state, double t_final, double dt,
                                  int sample_stride = 0);

}  // namespace todaspec
