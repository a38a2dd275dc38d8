#include "qfbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfbound/error.hpp"

namespace qfb {
namespace {

void require_exponent(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError("exponent x must be positive and finite, got " + format_value(x));
}

}  // namespace

std::string_view to_string(Direction d) noexcept { return d == Direction::upper ? "upper" : "lower"; }

Direction parse_direction(std::string_view text) {
    if (text == "upper") return Direction::upper;
    if (text == "lower") return Direction::lower;
    throw ValidationError("direction must be 'upper' or 'lower', got '" + std::string(text) + "'");
}

FormStats form_stats(const DiagonalForm& form) {
    FormStats s;
    double amax = 0.0;
    double amin = 0.0;
    for (std::size_t k = 0; k < form.dimension(); ++k) {
        const double a = form.a()[k];
        const double b = form.b()[k];
        s.mean += a;
        s.u_sq += a * a + 0.5 * b * b;
        amax = std::max(amax, a);
        amin = std::min(amin, a);
    }
    s.a_plus = amax;
    // -0.0 would otherwise leak through for all-zero forms
    s.a_minus = amin < 0.0 ? -amin : 0.0;
    return s;
}

TailBound upper_threshold(const FormStats& stats, double x) {
    require_exponent(x);
    const double t = stats.mean + 2.0 * std::sqrt(stats.u_sq) * std::sqrt(x) + 2.0 * stats.a_plus * x;
    return {Direction::upper, x, t, std::exp(-x)};
}

TailBound lower_threshold(const FormStats& stats, double x) {
    require_exponent(x);
    const double t = stats.mean - 2.0 * std::sqrt(stats.u_sq) * std::sqrt(x) - 2.0 * stats.a_minus * x;
    return {Direction::lower, x, t, std::exp(-x)};
}

TailBound threshold(const FormStats& stats, double x, Direction direction) {
    return direction == Direction::upper ? upper_threshold(stats, x) : lower_threshold(stats, x);
}

TailBound tail_exponent(const FormStats& stats, double deviation, Direction direction) {
    if (!(deviation > 0.0) || !std::isfinite(deviation))
        throw ValidationError("deviation must be positive and finite, got " + format_value(deviation));
    const double u = std::sqrt(stats.u_sq);
    const double v = 2.0 * (direction == Direction::upper ? stats.a_plus : stats.a_minus);
    if (u == 0.0 && v == 0.0)
        throw DegenerateFormError("form is deterministic (u = v = 0); no finite exponent reaches the deviation");
    // Rationalized root of v r^2 + 2 u r - deviation = 0, r = sqrt(x); covers v = 0 too.
    const double root = deviation / (u + std::sqrt(u * u + v * deviation));
    const double x = root * root;
    const double t = direction == Direction::upper ? stats.mean + deviation : stats.mean - deviation;
    return {direction, x, t, std::exp(-x)};
}

double envelope_threshold(double u, double v, double x) {
    require_exponent(x);
    if (!(u >= 0.0) || !(v >= 0.0) || !std::isfinite(u) || !std::isfinite(v))
        throw ValidationError("envelope parameters u, v must be finite and nonnegative");
    if (u == 0.0 && v == 0.0) throw ValidationError("envelope parameters u and v are both zero");
    return 2.0 * u * std::sqrt(x) + v * x;
}

std::vector<TailBound> union_threshold(std::span<const FormStats> stats, double x, Direction direction) {
    if (stats.empty()) throw ValidationError("union_threshold: empty family");
    require_exponent(x);
    const double inflated = x + std::log(static_cast<double>(stats.size()));
    std::vector<TailBound> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(threshold(s, inflated, direction));
    return out;
}

}  // namespace qfb
