#pragma once
#include <functional>

namespace todaspec {

struct QuadratureOptions {
    double rel_tol = 1e-11;     ///< relative change between node doublings
    int max_nodes = 1 << 16;    ///< hard cap on the node count
    int initial_nodes = 16;
    /// Accept once doubling stops improving the result (integrand noise
    /// floor) provided the change is below this relative level.
    double stall_tol = 1e-7;
};

/// Integrand callback for the singular-weight rule.  mu is the node,
/// dl = mu - l and dr = r - mu are the endpoint distances computed in the
/// substituted variable (exact to rounding even very close to the ends).
using SingularIntegrand = std::function<double(double mu, double dl, double dr)>;

/// Gauss-Chebyshev evaluation of
///   (1/pi) * integral_l^r g(mu) / sqrt((mu-l)(r-mu)) dmu
/// by the substitution mu = (l+r)/2 + ((r-l)/2) cos(theta), i.e. the mean of
/// g over the Chebyshev nodes, with adaptive node doubling.  Nodes never
/// touch the endpoints.  Throws NoConvergence past max_nodes.
double chebyshev_singular_mean(double l, double r, const SingularIntegrand& g,
                               const QuadratureOptions& opts = {});

/// Plain integral_l^r f(mu) dmu under the same cosine substitution, suited
/// to integrands that vanish like sqrt(distance) at one or both endpoints
/// (arcosh/arccos edge behavior).  Adaptive node doubling as above.
double cosine_plain_integral(double l, double r, const SingularIntegrand& f,
                             const QuadratureOptions& opts = {});

}  // namespace todaspec
