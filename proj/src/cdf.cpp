#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "qfbound/error.hpp"
#include "qfbound/oracle.hpp"

namespace qfb {
namespace {

// Terms with b^2 / |a| above this keep their linear phase drift inside the
// amplitude instead of the carrier frequency; splitting it out would cancel
// two huge numbers.
constexpr double kMaxDriftRatio = 1e6;

struct CfTerm {
    double a;
    double b;
    bool split;  // linear phase b^2 t / (4a) moved into the carrier
};

}  // namespace

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double cdf_p1(double a, double b, double t) noexcept {
    if (std::isnan(a) || std::isnan(b) || std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (a == 0.0) {
        if (b == 0.0) return t >= 0.0 ? 1.0 : 0.0;
        return b > 0.0 ? normal_cdf(t / b) : normal_cdf(-t / b);
    }
    if (t == std::numeric_limits<double>::infinity()) return 1.0;
    if (t == -std::numeric_limits<double>::infinity()) return 0.0;
    // a z^2 + b z - t = 0
    const double disc = b * b + 4.0 * a * t;
    if (disc < 0.0) return a > 0.0 ? 0.0 : 1.0;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    double lo = 0.0, hi = 0.0;
    if (q != 0.0) {
        lo = q / a;
        hi = -t / q;
        if (lo > hi) std::swap(lo, hi);
    }
    // mass between the roots, evaluated in whichever tail keeps precision
    const double inside = lo > 0.0 ? normal_cdf(-lo) - normal_cdf(-hi) : normal_cdf(hi) - normal_cdf(lo);
    return a > 0.0 ? inside : 1.0 - inside;
}

double cdf_cf(const DiagonalForm& form, double t, const CfOptions& options) {
    if (form.deterministic()) throw DegenerateFormError("cdf_cf: form is deterministic (a = b = 0)");
    if (std::isnan(t)) throw ValidationError("cdf_cf: t is NaN");
    if (t == std::numeric_limits<double>::infinity()) return 1.0;
    if (t == -std::numeric_limits<double>::infinity()) return 0.0;

    // Rescale T so that sum a^2 + b^2/2 = 1; the CDF is scale invariant.
    double u_sq = 0.0;
    for (std::size_t k = 0; k < form.dimension(); ++k)
        u_sq += form.a()[k] * form.a()[k] + 0.5 * form.b()[k] * form.b()[k];
    const double scale = 1.0 / std::sqrt(u_sq);

    std::vector<CfTerm> terms;
    double shift = 0.0;  // sum over split terms of -b^2 / (4a): the vertex of each parabola
    for (std::size_t k = 0; k < form.dimension(); ++k) {
        const double a = form.a()[k] * scale;
        const double b = form.b()[k] * scale;
        if (a == 0.0 && b == 0.0) continue;
        const bool split = a != 0.0 && b * b <= kMaxDriftRatio * std::abs(a);
        if (split) shift -= b * b / (4.0 * a);
        terms.push_back({a, b, split});
    }
    const double omega = t * scale - shift;

    // Gil-Pelaez: F(x) = 1/2 - (1/pi) int_0^inf sin(theta(s)) / (s rho(s)) ds, with
    // theta(s) = slow_phase(s) - omega s.
    auto slow_phase = [&terms](double s) {
        double acc = 0.0;
        for (const auto& k : terms) {
            if (k.a == 0.0) continue;
            const double w = 2.0 * k.a * s;
            const double damp = 1.0 + w * w;
            acc += 0.5 * std::atan(w);
            acc += k.split ? k.b * k.b * s / (4.0 * k.a * damp) : -k.a * k.b * k.b * s * s * s / damp;
        }
        return acc;
    };
    auto inv_rho = [&terms](double s) {
        double log_rho = 0.0;
        for (const auto& k : terms) {
            const double w = 2.0 * k.a * s;
            const double damp = 1.0 + w * w;
            log_rho += 0.25 * std::log1p(w * w) + 0.5 * k.b * k.b * s * s / damp;
        }
        return std::exp(-log_rho);
    };
    auto sin_amp = [&](double s) { return s == 0.0 ? 0.0 : std::sin(slow_phase(s)) * inv_rho(s) / s; };
    auto cos_amp = [&](double s) { return s == 0.0 ? 0.0 : std::cos(slow_phase(s)) * inv_rho(s) / s; };

    double integral = 0.0;
    double abs_error = 0.0;
    try {
        if (omega == 0.0) {
            thread_local boost::math::quadrature::exp_sinh<double> es;
            double err = 0.0, l1 = 0.0;
            integral = es.integrate(sin_amp, 0.0, std::numeric_limits<double>::infinity(),
                                    std::sqrt(std::numeric_limits<double>::epsilon()), &err, &l1);
            abs_error = err;
        } else {
            thread_local boost::math::quadrature::ooura_fourier_sin<double> fsin;
            thread_local boost::math::quadrature::ooura_fourier_cos<double> fcos;
            const double w = std::abs(omega);
            // sin(phi - omega s) = sin(phi) cos(omega s) - sign(omega) cos(phi) sin(|omega| s)
            const auto [ic, ec] = fcos.integrate(sin_amp, w);
            const auto [is, es] = fsin.integrate(cos_amp, w);
            integral = ic - std::copysign(is, omega);
            // the relative estimate is NaN for an identically zero integral
            abs_error = (ic == 0.0 ? 0.0 : ec * std::abs(ic)) + (is == 0.0 ? 0.0 : es * std::abs(is));
        }
    } catch (const std::exception& ex) {
        throw NumericalError(std::string("cdf_cf: quadrature failed: ") + ex.what(),
                             std::numeric_limits<double>::infinity());
    }
    abs_error /= std::numbers::pi;
    if (!std::isfinite(integral) || !(abs_error <= options.tolerance)) {
        throw NumericalError("cdf_cf: achieved accuracy " + format_value(abs_error) + " misses tolerance " +
                                 format_value(options.tolerance),
                             abs_error);
    }
    return std::clamp(0.5 - integral / std::numbers::pi, 0.0, 1.0);
}

}  // namespace qfb
