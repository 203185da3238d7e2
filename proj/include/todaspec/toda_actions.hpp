#pragma once
#include <vector>

#include "todaspec/jacobi_spectral.hpp"
#include "todaspec/quadrature.hpp"

namespace todaspec {

/// Action variables I_n >= 0 (zero exactly on closed gaps) with the
/// quotients J_n = I_n / gamma_n (0 on closed gaps).
struct ActionSet {
    std::vector<double> I;  ///< n = 1..N-1 at index n-1
    std::vector<double> J;
};

/// I_n = (1/pi) integral over gap n of arcosh((-1)^{N-n} Delta_N(mu)/2),
/// cosine substitution, stable arcosh near the endpoints.
ActionSet actions_arcosh(const TodaState& state, const SpectrumN& spectrum,
                         const QuadratureOptions& opts = {});

/// I_n = (1/pi) integral over gap n of (mu - dot_lambda_n) Delta_dot /
/// sqrt[c]{Delta^2 - 4}(mu - i0), same singular quadrature.
ActionSet actions_moment(const TodaState& state, const SpectrumN& spectrum,
                         const QuadratureOptions& opts = {});

/// J_n = I_n / gamma_n for open gaps, 0 for closed ones.
std::vector<double> j_quotients(const ActionSet& actions, const SpectrumN& spectrum);

/// arcosh(x) evaluated as log(x + sqrt(x^2-1)) with a series fallback for
/// x - 1 < 1e-8; arguments below 1 within the clamp tolerance are clamped.
double stable_arcosh(double x);

}  // namespace todaspec
