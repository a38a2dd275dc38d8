#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qfbound/bounds.hpp"
#include "qfbound/forms.hpp"

namespace qfb {

/// Sub-gamma envelope log E exp(y xi) <= (u y)^2 / (1 - v y) for 0 < y < 1/v.
struct MgfEnvelope {
    double u = 0.0;
    double v = 0.0;

    /// Envelope of T - mean for a diagonal form: u = sqrt(u_sq), v = 2 a_plus.
    static MgfEnvelope of(const FormStats& stats);

    /// (u y)^2 / (1 - v y); DomainError outside 0 < y < 1/v.
    double log_bound(double y) const;
    /// Deviation exceeded with probability at most exp(-x); see envelope_threshold.
    double threshold(double x) const;
};

/// log E exp(y (a z^2 + b z)) = (b^2/2) y^2 / (1 - 2 a y) - log(1 - 2 a y) / 2.
/// Throws DomainError when 1 - 2 a y <= 0.
double log_mgf_term(double a, double b, double y);

/// log E exp(y (T - sum a_k)), summed term by term. Every term's domain is
/// checked, including those with a_k < 0.
double log_mgf_centered(const DiagonalForm& form, double y);

/// u_sq y^2 / (1 - 2 a_plus y) on the open interval 0 < y < 1/(2 a_plus).
double envelope_rhs(const FormStats& stats, double y);

struct ScalarIneqCheck {
    double lhs = 0.0;  // -log(1 - 2 r y)/2 - r y
    double rhs = 0.0;  // r^2 y^2 / (1 - 2 a y)
    bool holds = false;
};

/// The per-coefficient inequality behind the envelope, for r <= a.
/// Requires y >= 0, 1 - 2 r y > 0 and, when a > 0, y < 1/(2a); ValidationError otherwise.
ScalarIneqCheck check_scalar_ineq(double r, double a, double y);

/// Slack allowed in the envelope comparison, relative to 1 + |rhs|.
inline constexpr double kEnvelopeSlack = 1e-10;
/// Slack allowed in the scalar comparison, relative to 1 + |rhs|.
inline constexpr double kScalarSlack = 1e-12;
/// Grids stop at this fraction of the pole 1/(2 a_plus).
inline constexpr double kPoleFraction = 0.999;
/// Upper grid end when a_plus = 0 and there is no pole.
inline constexpr double kPolelessGridEnd = 10.0;

/// y_j = y_max (j + 1) / n, j = 0..n-1, where y_max = 0.999 / (2 a_plus), or 10 when a_plus = 0.
std::vector<double> envelope_grid(const FormStats& stats, std::size_t n);

struct EnvelopeCheck {
    std::size_t grid_size = 0;
    double y_max = 0.0;
    double max_excess = 0.0;     // max_j lhs_j - rhs_j; <= 0 when the envelope holds exactly
    double worst_y = 0.0;        // where max_excess is attained
    double min_rhs_ratio = 0.0;  // min_j (rhs_j - lhs_j) / (1 + |rhs_j|)
    std::size_t violations = 0;  // points with lhs > rhs + slack (1 + |rhs|)
    std::optional<std::size_t> first_violation;

    bool passed() const noexcept { return violations == 0; }
};

/// Compares log_mgf_centered against envelope_rhs on envelope_grid(form_stats(form), n).
/// Throws ValidationError when n == 0.
EnvelopeCheck check_envelope(const DiagonalForm& form, std::size_t n, double slack = kEnvelopeSlack);

struct ScalarGridCheck {
    std::size_t points = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;
    /// Lexicographically smallest failing (a index, r index, y index).
    std::optional<std::array<std::size_t, 3>> first_violation;

    bool passed() const noexcept { return violations == 0; }
};

/// Evaluates check_scalar_ineq on n^3 points: a_i = 5 (i+1)/n, r_k = -5 + (a_i + 5) k/(n-1),
/// y_j = (0.999 / (2 a_i)) (j+1)/n. Requires n >= 2.
ScalarGridCheck check_scalar_ineq_grid(std::size_t n);

}  // namespace qfb
