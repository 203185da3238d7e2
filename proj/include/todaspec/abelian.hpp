#pragma once
#include <functional>
#include <vector>

#include "todaspec/jacobi_spectral.hpp"
#include "todaspec/quadrature.hpp"
#include "todaspec/toda_actions.hpp"

namespace todaspec {

/// Normalization system over the gap cycles in the Chebyshev basis
/// T_j(mu/2): row k is the gap-k cycle functional, replaced by the residue
/// (point-evaluation) functional when the gap is closed.
struct PeriodMatrix {
    int N = 0;
    std::vector<double> A;        ///< (N-1)*(N-1) row-major
    std::vector<char> closed_row; ///< residue rows
    double rcond = 0.0;           ///< reciprocal condition estimate from the LU

    double at(int k, int j) const { return A[std::size_t(k) * std::size_t(N - 1) + std::size_t(j)]; }
};

PeriodMatrix period_matrix(const TodaState& state, const SpectrumN& spectrum,
                           const QuadratureOptions& opts = {});

/// Chebyshev coefficients of the normalized differentials psi_n together
/// with the extracted frequencies omega_n = q_N * (leading mu-coefficient).
struct DifferentialBasis {
    int N = 0;
    std::vector<double> coeffs;  ///< row n-1: T_0..T_{N-2} coefficients of psi_n
    std::vector<double> freq;    ///< omega_n, n = 1..N-1
    double solve_residual = 0.0; ///< max-norm residual of A c_n = e_n
    double rcond = 0.0;

    double coeff(int n, int j) const {
        return coeffs[std::size_t(n - 1) * std::size_t(N - 1) + std::size_t(j)];
    }
};

/// Solves the normalization system for every n.  Throws
/// SingularPeriodMatrix on condition blow-up or a nonpositive frequency.
DifferentialBasis psi_basis(const TodaState& state, const SpectrumN& spectrum,
                            const PeriodMatrix& pm);

/// psi_n(mu) by Clenshaw evaluation; derivative variant for root polish.
double psi_eval(const DifferentialBasis& basis, int n, double mu);
std::pair<double, double> psi_eval_deriv(const DifferentialBasis& basis, int n, double mu);

/// The N-2 zeros of psi_n (equivalently phi_n), one per foreign gap;
/// closed gaps contribute their midpoint exactly.  Throws
/// RootCountMismatch when an open gap holds no sign change.
std::vector<double> phi_zeros(const DifferentialBasis& basis, const SpectrumN& spectrum, int n);

/// (1/pi) * integral over gap k of f(mu)/sqrt[c]{chi_N(mu-i0)} dmu, the
/// real reduction of the (1/2pi) cycle integral.  Throws ClosedGap below
/// the degeneracy threshold.
double gap_cycle_integral(const TodaState& state, const SpectrumN& spectrum, int k,
                          const std::function<double(double)>& f,
                          const QuadratureOptions& opts = {});

/// integral over band j of (mu - p_N/N) Delta_dot / (i sqrt[c]{Delta^2-4}),
/// computed in the integrated-by-parts arccos form (no endpoint
/// singularities).
double band_integral_first_kind(const TodaState& state, const SpectrumN& spectrum, int j,
                                const QuadratureOptions& opts = {});

/// integral over band j of phi_k / (i sqrt[c]{chi_N}), evaluated through the
/// standard-root quotient so that closed-gap factors cancel exactly.
double band_integral_phi(const SpectrumN& spectrum, const std::vector<double>& sigma_k,
                         int k, int j, const QuadratureOptions& opts = {});

/// Solves the linear frequency system (Proposition-form): N omega_n +
/// sum_k I_k omega_k sum_{j<=n} B_{jk} = sum_{j<=n} first-kind integrals.
/// Throws SingularSystem if the solve degenerates.
std::vector<double> frequencies_via_B5(const TodaState& state, const SpectrumN& spectrum,
                                       const DifferentialBasis& basis, const ActionSet& actions,
                                       const QuadratureOptions& opts = {});

/// Post-hoc check: re-evaluates every cycle functional on the solved basis
/// with twice the starting node count and returns max |value - delta_nk|.
double normalization_residual(const TodaState& state, const SpectrumN& spectrum,
                              const DifferentialBasis& basis, const QuadratureOptions& opts = {});

}  // namespace todaspec
