#pragma once
#include <stdexcept>
#include <string>

namespace todaspec {

/// Base class for all library errors; CLI and tests catch this one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// discretize: 1 + alpha(n/N)/(4N^2) <= 0, profile too large for this N.
struct NonPositiveA : Error { using Error::Error; };

/// evolve_lax: an off-diagonal entry dropped to <= 0 during integration.
struct StepRejected : Error { using Error::Error; };

/// Root bracketing could not isolate a root after adaptive refinement.
struct BracketFailure : Error { using Error::Error; };

/// croot evaluation requested within boundary_eps of an eigenvalue.
struct OnSpectrumBoundary : Error { using Error::Error; };

/// Gap quadrature requested on a gap below the degeneracy threshold.
struct ClosedGap : Error { using Error::Error; };

/// Adaptive quadrature exceeded max_nodes without meeting the tolerance.
struct NoConvergence : Error { using Error::Error; };

/// Period matrix solve failed (condition blow-up or nonpositive frequency).
struct SingularPeriodMatrix : Error { using Error::Error; };

/// phi_zeros: sign changes do not isolate one root per gap.
struct RootCountMismatch : Error { using Error::Error; };

/// Action integrand left the arcosh domain at an interior node, which
/// signals wrong parity/sign bookkeeping upstream.
struct NegativeArcoshArgument : Error { using Error::Error; };

/// kdv_psi: sigma Newton iteration failed to contract.
struct NewtonDivergence : Error { using Error::Error; };

/// frequencies_via_B5: the linear system for the frequencies is singular.
struct SingularSystem : Error { using Error::Error; };

/// fit_rate: fewer than three sweep points.
struct InsufficientData : Error { using Error::Error; };

/// Configuration file errors (unknown keys, bad types, bad values).
struct ConfigError : Error { using Error::Error; };

}  // namespace todaspec
