#pragma once
#include <vector>

#include "todaspec/jacobi_spectral.hpp"
#include "todaspec/profiles.hpp"
#include "todaspec/quadrature.hpp"

namespace todaspec {

/// Floquet discriminant machinery for -y'' + q y = lambda y with q of
/// period 1/2.  The fundamental system is integrated over [0, 1/2] by a
/// fixed-step classical 4th-order method together with its first (and on
/// demand second) lambda-variational equation; the step count grows like
/// ceil(n_base (1 + sqrt|lambda|/pi)).
class HillOperator {
  public:
    explicit HillOperator(HillPotential q, int n_base = 256);

    /// Doubles n_base until the discriminant at probe_lambda moves by less
    /// than 1e-11 between refinements.
    static HillOperator with_auto_steps(HillPotential q, double probe_lambda,
                                        int n_base = 256);

    const HillPotential& potential() const { return q_; }
    int n_base() const { return n_base_; }

    DiscriminantValue discriminant(double lambda) const;
    double discriminant_second(double lambda) const;
    /// |y1 y2' - y1' y2 - 1| at x = 1/2 (conservation check).
    double wronskian_defect(double lambda) const;

  private:
    HillPotential q_;
    int n_base_;
};

/// Periodic eigenvalues of the Hill operator on [0, 1]: the first 2K+1
/// roots of Delta^2 = 4 with gap/midpoint data, Delta-dot zeros, and the
/// closed-gap classification (absolute threshold 1e-9).
struct HillSpectrum {
    int K = 0;
    std::vector<double> lambda;      ///< lambda_0..lambda_{2K}
    std::vector<double> gap_len;     ///< n = 1..K at index n-1
    std::vector<double> tau;
    std::vector<double> dot_lambda;  ///< K+1 zeros of Delta-dot (gaps 1..K+1)
    std::vector<char> closed;

    double gap_lo(int n) const { return lambda[std::size_t(2 * n - 1)]; }
    double gap_hi(int n) const { return lambda[std::size_t(2 * n)]; }
    double band_lo(int j) const { return lambda[std::size_t(2 * j - 2)]; }
    double band_hi(int j) const { return lambda[std::size_t(2 * j - 1)]; }
};

HillSpectrum hill_eigenvalues(const HillOperator& op, int K);

/// KdV actions I_n = (2/pi) * integral over gap n of
/// arcosh((-1)^n Delta(lambda)/2); zero on closed gaps.
std::vector<double> kdv_actions(const HillOperator& op, const HillSpectrum& spectrum,
                                const QuadratureOptions& opts = {});

/// Zeros sigma_l of the normalized differential psi_n, solved from the
/// truncated vanishing conditions in the standard-root quotient form.
struct KdvDifferential {
    int n = 0;
    int K_sigma = 0;
    std::vector<double> sigma;         ///< l = 1..K_sigma at index l-1 (tau_l when closed)
    double newton_residual = 0.0;      ///< normalized, recomputed at 2x nodes
    double normalization_residual = 0.0;  ///< |cycle-n constant| - 1
    int iterations = 0;
};

KdvDifferential kdv_psi(const HillSpectrum& spectrum, int n, int K_sigma,
                        const QuadratureOptions& opts = {});

/// KdV frequencies omega_n, n = 1..n_max, through the band-integral system
/// with the integrated-by-parts arccos form for the first-kind part and the
/// quotient form for the psi_k corrections (k <= K with I_k != 0).
std::vector<double> kdv_frequencies(const HillOperator& op, const HillSpectrum& spectrum,
                                    const std::vector<double>& actions, int n_max,
                                    int K_sigma, const QuadratureOptions& opts = {});

/// 2 pi n / N - (1/24) (2N)^{-3} omega_kdv, the reference frequency of the
/// KdV Hamiltonian combination that matches the Toda edge expansion.
double hkdv_reference(int N, int n, double omega_kdv);

}  // namespace todaspec
