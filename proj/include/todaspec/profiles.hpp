#pragma once
#include <cstddef>
#include <utility>
#include <vector>

namespace todaspec {

/// Real trigonometric polynomial with mean zero over the unit period,
///   f(x) = sum_{k=1..K} c_k cos(2 pi k x) + s_k sin(2 pi k x).
/// There is no k = 0 term, so the mean-zero invariant holds by construction.
struct FourierProfile {
    std::vector<double> cos_coeff;  ///< c_k, index k-1
    std::vector<double> sin_coeff;  ///< s_k, index k-1

    FourierProfile() = default;
    FourierProfile(std::vector<double> c, std::vector<double> s);

    std::size_t order() const { return cos_coeff.size(); }

    double operator()(double x) const;

    /// Termwise antiderivative xi with xi' = f and mean zero.
    double antiderivative(double x) const;

    /// sup-norm bound sum_k |c_k| + |s_k| (used to inflate root brackets).
    double sup_bound() const;

    bool is_zero() const;

    /// Profile x -> f(-x) (cosine part kept, sine part negated).
    FourierProfile parity_flip() const;

    /// Profile x -> -f(-x).
    FourierProfile negated_parity_flip() const;

    static FourierProfile zero() { return FourierProfile(); }
    /// Single cosine term c*cos(2 pi k x).
    static FourierProfile cosine(int k, double c);
    /// Single sine term s*sin(2 pi k x).
    static FourierProfile sine(int k, double s);
};

/// Mean-zero trigonometric polynomial of period 1/2,
///   q(x) = sum_{k=1..K} a_k cos(4 pi k x) + b_k sin(4 pi k x).
struct HillPotential {
    std::vector<double> cos_coeff;
    std::vector<double> sin_coeff;

    double operator()(double x) const;
    double sup_bound() const;
    bool is_zero() const;

    static HillPotential zero() { return HillPotential(); }
    static HillPotential cosine(int k, double a);
};

/// The pair q_-/q_+ of period-1/2 potentials built from unit-period
/// profiles, q_pm(x) = -2 alpha(2x) -+ beta(2x).
std::pair<HillPotential, HillPotential> potentials(const FourierProfile& alpha,
                                                   const FourierProfile& beta);

}  // namespace todaspec
