#include "qfbound/mgf.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qfbound/error.hpp"

namespace qfb {

MgfEnvelope MgfEnvelope::of(const FormStats& stats) { return {std::sqrt(stats.u_sq), 2.0 * stats.a_plus}; }

double MgfEnvelope::log_bound(double y) const {
    if (!(y > 0.0) || !(v * y < 1.0))
        throw DomainError("envelope evaluated outside 0 < y < 1/v at y = " + format_value(y), y);
    return (u * y) * (u * y) / (1.0 - v * y);
}

double MgfEnvelope::threshold(double x) const { return envelope_threshold(u, v, x); }

double log_mgf_term(double a, double b, double y) {
    const double w = 2.0 * a * y;
    if (!(w < 1.0) || !std::isfinite(y))
        throw DomainError("MGF of a z^2 + b z diverges: 1 - 2 a y = " + format_value(1.0 - w) + " at y = " + format_value(y), y);
    return 0.5 * b * b * y * y / (1.0 - w) - 0.5 * std::log1p(-w);
}

double log_mgf_centered(const DiagonalForm& form, double y) {
    double s = 0.0;
    for (std::size_t k = 0; k < form.dimension(); ++k) {
        const double a = form.a()[k];
        s += log_mgf_term(a, form.b()[k], y) - a * y;
    }
    return s;
}

double envelope_rhs(const FormStats& stats, double y) {
    const double w = 2.0 * stats.a_plus * y;
    if (!(y > 0.0) || !(w < 1.0) || !std::isfinite(y))
        throw DomainError("envelope_rhs needs 0 < y < 1/(2 a_plus); got y = " + format_value(y), y);
    return stats.u_sq * y * y / (1.0 - w);
}

ScalarIneqCheck check_scalar_ineq(double r, double a, double y) {
    if (!std::isfinite(r) || !std::isfinite(a) || !std::isfinite(y))
        throw ValidationError("check_scalar_ineq: non-finite argument");
    if (y < 0.0) throw ValidationError("check_scalar_ineq: y must be nonnegative, got " + format_value(y));
    if (!(2.0 * r * y < 1.0)) throw ValidationError("check_scalar_ineq: 1 - 2 r y <= 0 at y = " + format_value(y));
    if (a > 0.0 && !(2.0 * a * y < 1.0))
        throw ValidationError("check_scalar_ineq: y = " + format_value(y) + " is not below 1/(2a)");
    ScalarIneqCheck c;
    c.lhs = -0.5 * std::log1p(-2.0 * r * y) - r * y;
    c.rhs = r * r * y * y / (1.0 - 2.0 * a * y);
    c.holds = c.lhs <= c.rhs + kScalarSlack * (1.0 + std::abs(c.rhs));
    return c;
}

std::vector<double> envelope_grid(const FormStats& stats, std::size_t n) {
    if (n == 0) throw ValidationError("grid size must be at least 1");
    const double y_max = stats.a_plus > 0.0 ? kPoleFraction / (2.0 * stats.a_plus) : kPolelessGridEnd;
    std::vector<double> ys(n);
    for (std::size_t j = 0; j < n; ++j) ys[j] = y_max * static_cast<double>(j + 1) / static_cast<double>(n);
    return ys;
}

EnvelopeCheck check_envelope(const DiagonalForm& form, std::size_t n, double slack) {
    const FormStats stats = form_stats(form);
    const auto ys = envelope_grid(stats, n);
    EnvelopeCheck out;
    out.grid_size = n;
    out.y_max = ys.back();
    out.max_excess = -std::numeric_limits<double>::infinity();
    out.min_rhs_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const double y = ys[j];
        const double lhs = log_mgf_centered(form, y);
        const double rhs = envelope_rhs(stats, y);
        const double excess = lhs - rhs;
        if (excess > out.max_excess) {
            out.max_excess = excess;
            out.worst_y = y;
        }
        out.min_rhs_ratio = std::min(out.min_rhs_ratio, (rhs - lhs) / (1.0 + std::abs(rhs)));
        if (excess > slack * (1.0 + std::abs(rhs))) {
            if (!out.first_violation) out.first_violation = j;
            ++out.violations;
        }
    }
    return out;
}

ScalarGridCheck check_scalar_ineq_grid(std::size_t n) {
    if (n < 2) throw ValidationError("scalar inequality grid needs at least 2 points per axis");
    ScalarGridCheck out;
    out.max_excess = -std::numeric_limits<double>::infinity();
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 5.0 * static_cast<double>(i + 1) / dn;
        const double y_max = kPoleFraction / (2.0 * a);
        for (std::size_t k = 0; k < n; ++k) {
            const double r = k + 1 == n ? a : -5.0 + (a + 5.0) * static_cast<double>(k) / (dn - 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                const double y = y_max * static_cast<double>(j + 1) / dn;
                const auto c = check_scalar_ineq(r, a, y);
                ++out.points;
                out.max_excess = std::max(out.max_excess, c.lhs - c.rhs);
                if (!c.holds) {
                    if (!out.first_violation) out.first_violation = std::array<std::size_t, 3>{i, k, j};
                    ++out.violations;
                }
            }
        }
    }
    return out;
}

}  // namespace qfb
