#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qfbound/forms.hpp"

namespace qfb {

enum class Direction { upper, lower };

std::string_view to_string(Direction d) noexcept;
/// Accepts "upper" / "lower"; throws ValidationError otherwise.
Direction parse_direction(std::string_view text);

/// Scalars that drive the Bernstein-type bounds of a diagonal form.
struct FormStats {
    double mean = 0.0;     // sum a_k
    double u_sq = 0.0;     // sum a_k^2 + b_k^2 / 2
    double a_plus = 0.0;   // max(max_k a_k, 0)
    double a_minus = 0.0;  // max(max_k -a_k, 0)

    bool deterministic() const noexcept { return u_sq == 0.0; }
    /// Stats of -T.
    FormStats negated() const noexcept { return {-mean, u_sq, a_minus, a_plus}; }
};

/// P(T >= threshold) <= prob_bound (upper) or P(T <= threshold) <= prob_bound (lower),
/// with prob_bound = exp(-x).
struct TailBound {
    Direction direction = Direction::upper;
    double x = 0.0;
    double threshold = 0.0;
    double prob_bound = 1.0;
};

FormStats form_stats(const DiagonalForm& form);

/// mean + 2 sqrt(u_sq) sqrt(x) + 2 a_plus x. Throws ValidationError unless x is positive and finite.
TailBound upper_threshold(const FormStats& stats, double x);
/// mean - 2 sqrt(u_sq) sqrt(x) - 2 a_minus x. Equals -upper_threshold(stats.negated(), x) exactly.
TailBound lower_threshold(const FormStats& stats, double x);
TailBound threshold(const FormStats& stats, double x, Direction direction);

/// Inverts the threshold map: finds x with threshold(stats, x) = mean +/- deviation.
///
/// With u = sqrt(u_sq) and v = 2 a_plus (upper) or 2 a_minus (lower), solves
/// 2 u sqrt(x) + v x = deviation for the nonnegative root. Throws ValidationError
/// for deviation <= 0 and DegenerateFormError when u = v = 0.
TailBound tail_exponent(const FormStats& stats, double deviation, Direction direction);

/// 2 u sqrt(x) + v x: the deviation level exceeded with probability at most exp(-x)
/// by any centered variable whose log-MGF is bounded by (u y)^2 / (1 - v y).
double envelope_threshold(double u, double v, double x);

/// Simultaneous bounds for M forms: every form is thresholded at x + ln M, so the
/// probability that any of them is violated is at most exp(-x).
std::vector<TailBound> union_threshold(std::span<const FormStats> stats, double x, Direction direction);

}  // namespace qfb
