#pragma once
#include <vector>

#include "todaspec/toda_model.hpp"

namespace todaspec {

struct DiscriminantValue {
    double delta;      ///< Delta_N(mu)
    double delta_dot;  ///< d/dmu Delta_N(mu)
};

/// Discriminant of the chain at mu: Delta_N = y1(N) + y2(N+1) from the
/// three-term recursion a_{k-1} y(k-1) + b_k y(k) + a_k y(k+1) = mu y(k),
/// differentiated simultaneously for delta_dot.
DiscriminantValue discriminant(const TodaState& state, double mu);

/// Second mu-derivative of the discriminant (used for degenerate-gap
/// residue normalizations and Newton polish of the Delta-dot zeros).
double discriminant_second(const TodaState& state, double mu);

/// Delta and its first four mu-derivatives, all from one stable pass of the
/// differentiated transfer recursion.  Feeds the degenerate-gap expansions
/// of cycle integrals, where direct quadrature of Delta^2 - 4 drowns in
/// cancellation noise.
struct DiscriminantJet {
    double d[5];  ///< Delta, Delta', Delta'', Delta''', Delta''''
};
DiscriminantJet discriminant_jet(const TodaState& state, double mu);

/// The 2N periodic eigenvalues of Q_N = L((b,b),(a,a)) with the derived
/// gap/midpoint data and the zeros of Delta-dot.
struct SpectrumN {
    int N = 0;
    bool even = false;                ///< parity flag for the L-eigenvalue selection
    std::vector<double> lambda;       ///< 2N sorted eigenvalues
    std::vector<double> gap_len;      ///< gamma_n = lambda_{2n} - lambda_{2n-1}, n = 1..N-1
    std::vector<double> tau;          ///< gap midpoints tau_n
    std::vector<double> dot_lambda;   ///< zeros of Delta-dot, one per gap
    std::vector<char> closed;         ///< gap below the degeneracy threshold
    double degeneracy_eps = 0.0;      ///< threshold used to classify gaps

    double width() const { return lambda.back() - lambda.front(); }
    double boundary_eps() const { return 1e-12 * width(); }
    /// 0-based helpers for 1-based gap index n (1..N-1).
    double gap_lo(int n) const { return lambda[std::size_t(2 * n - 1)]; }
    double gap_hi(int n) const { return lambda[std::size_t(2 * n)]; }
    /// Band j = [lambda_{2j-2}, lambda_{2j-1}], j = 1..N.
    double band_lo(int j) const { return lambda[std::size_t(2 * j - 2)]; }
    double band_hi(int j) const { return lambda[std::size_t(2 * j - 1)]; }
};

/// Locates all 2N roots of Delta_N^2 = 4 by bracketed bisection seeded from
/// the equilibrium spectrum inflated by the perturbation bound, with Newton
/// polish, and the N-1 zeros of Delta-dot.  Throws BracketFailure when a
/// bracket cannot be isolated after adaptive refinement.
SpectrumN eigenvalues_Q(const TodaState& state);

/// The N eigenvalues of L(b, a) selected from the spectrum of Q_N by the
/// parity rule (even N: lambda_0, lambda_3, lambda_4, ..., lambda_{2N-1};
/// odd N: lambda_1, lambda_2, lambda_5, lambda_6, ..., lambda_{2N-1}).
std::vector<double> eigenvalues_L(const SpectrumN& spectrum);

/// Height of the discriminant over the gap: (-1)^{N-n} Delta(tau_n)/2 - 1.
/// Zero at a degenerate gap; quadrature across the gap resolves nothing
/// once this is below the evaluation noise floor.
double gap_center_excess(const TodaState& state, const SpectrumN& spectrum, int n);

/// Gap-signal level below which integrals over the gap are evaluated by
/// their degenerate-gap (residue / parabolic-cap) limits instead of
/// quadrature through Delta^2 - 4.
inline constexpr double kGapSignalEps = 1e-8;

enum class PhaseClass { PositiveReal, NegativeReal, PositiveImaginary, NegativeImaginary };

/// Value of a canonical root at mu - i0 (Side::Below) or mu + i0: purely
/// real on gaps and outside the spectrum, purely imaginary inside bands.
struct CRootValue {
    double magnitude = 0.0;
    PhaseClass phase_class = PhaseClass::PositiveReal;

    double real() const;
    double imag() const;
    bool is_real() const {
        return phase_class == PhaseClass::PositiveReal || phase_class == PhaseClass::NegativeReal;
    }
    /// Signed value as +-magnitude (real) or +-magnitude (imaginary part).
    double signed_value() const;
};

enum class Side { Below, Above };

/// Canonical root sqrt[c]{Delta_N(mu -+ i0)^2 - 4}, fixed by positivity
/// above the spectrum on the upper rim.  Throws OnSpectrumBoundary if mu is
/// within boundary_eps of an eigenvalue.
CRootValue croot_delta_sq(const TodaState& state, const SpectrumN& spectrum, double mu,
                          Side side = Side::Below);

/// sqrt[c]{chi_N} = q_N * sqrt[c]{Delta_N^2 - 4}; evaluated through the
/// discriminant, never through eigenvalue products.
CRootValue croot_chi(const TodaState& state, const SpectrumN& spectrum, double mu,
                     Side side = Side::Below);

}  // namespace todaspec
