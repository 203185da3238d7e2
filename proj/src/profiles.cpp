#include "todaspec/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace todaspec {

namespace {
const double TWO_PI = 2.0 * M_PI;

double eval_trig(const std::vector<double>& c, const std::vector<double>& s,
                 double omega0, double x) {
    double f = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double w = omega0 * double(k + 1) * x;
        f += c[k] * std::cos(w) + s[k] * std::sin(w);
    }
    return f;
}

double sup_trig(const std::vector<double>& c, const std::vector<double>& s) {
    double m = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) m += std::fabs(c[k]) + std::fabs(s[k]);
    return m;
}

bool all_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}
}  // namespace

FourierProfile::FourierProfile(std::vector<double> c, std::vector<double> s)
    : cos_coeff(std::move(c)), sin_coeff(std::move(s)) {
    if (cos_coeff.size() != sin_coeff.size())
        cos_coeff.resize(std::max(cos_coeff.size(), sin_coeff.size()), 0.0),
            sin_coeff.resize(cos_coeff.size(), 0.0);
}

double FourierProfile::operator()(double x) const {
    return eval_trig(cos_coeff, sin_coeff, TWO_PI, x);
}

double FourierProfile::antiderivative(double x) const {
    // integral of c cos(2 pi k x) is c sin(2 pi k x)/(2 pi k); of s sin is
    // -s cos(2 pi k x)/(2 pi k). Both terms have mean zero.
    double f = 0.0;
    for (std::size_t k = 0; k < cos_coeff.size(); ++k) {
        const double wk = TWO_PI * double(k + 1);
        f += (cos_coeff[k] * std::sin(wk * x) - sin_coeff[k] * std::cos(wk * x)) / wk;
    }
    return f;
}

double FourierProfile::sup_bound() const { return sup_trig(cos_coeff, sin_coeff); }

bool FourierProfile::is_zero() const { return all_zero(cos_coeff) && all_zero(sin_coeff); }

FourierProfile FourierProfile::parity_flip() const {
    FourierProfile g = *this;
    for (double& s : g.sin_coeff) s = -s;
    return g;
}

FourierProfile FourierProfile::negated_parity_flip() const {
    FourierProfile g = *this;
    for (double& c : g.cos_coeff) c = -c;
    return g;
}

FourierProfile FourierProfile::cosine(int k, double c) {
    if (k < 1) throw std::invalid_argument("FourierProfile::cosine: k must be >= 1");
    FourierProfile f;
    f.cos_coeff.assign(std::size_t(k), 0.0);
    f.sin_coeff.assign(std::size_t(k), 0.0);
    f.cos_coeff[std::size_t(k - 1)] = c;
    return f;
}

FourierProfile FourierProfile::sine(int k, double s) {
    if (k < 1) throw std::invalid_argument("FourierProfile::sine: k must be >= 1");
    FourierProfile f;
    f.cos_coeff.assign(std::size_t(k), 0.0);
    f.sin_coeff.assign(std::size_t(k), 0.0);
    f.sin_coeff[std::size_t(k - 1)] = s;
    return f;
}

double HillPotential::operator()(double x) const {
    return eval_trig(cos_coeff, sin_coeff, 2.0 * TWO_PI, x);
}

double HillPotential::sup_bound() const { return sup_trig(cos_coeff, sin_coeff); }

bool HillPotential::is_zero() const { return all_zero(cos_coeff) && all_zero(sin_coeff); }

HillPotential HillPotential::cosine(int k, double a) {
    if (k < 1) throw std::invalid_argument("HillPotential::cosine: k must be >= 1");
    HillPotential q;
    q.cos_coeff.assign(std::size_t(k), 0.0);
    q.sin_coeff.assign(std::size_t(k), 0.0);
    q.cos_coeff[std::size_t(k - 1)] = a;
    return q;
}

std::pair<HillPotential, HillPotential> potentials(const FourierProfile& alpha,
                                                   const FourierProfile& beta) {
    const std::size_t K = std::max(alpha.order(), beta.order());
    HillPotential qm, qp;
    qm.cos_coeff.assign(K, 0.0);
    qm.sin_coeff.assign(K, 0.0);
    qp.cos_coeff.assign(K, 0.0);
    qp.sin_coeff.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double ca = k < alpha.order() ? alpha.cos_coeff[k] : 0.0;
        const double sa = k < alpha.order() ? alpha.sin_coeff[k] : 0.0;
        const double cb = k < beta.order() ? beta.cos_coeff[k] : 0.0;
        const double sb = k < beta.order() ? beta.sin_coeff[k] : 0.0;
        // alpha(2x) contributes cos(4 pi k x)/sin(4 pi k x) terms directly.
        qm.cos_coeff[k] = -2.0 * ca - cb;
        qm.sin_coeff[k] = -2.0 * sa - sb;
        qp.cos_coeff[k] = -2.0 * ca + cb;
        qp.sin_coeff[k] = -2.0 * sa + sb;
    }
    return {qm, qp};
}

}  // namespace todaspec
