#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qfbound/bounds.hpp"
#include "qfbound/forms.hpp"

namespace qfb {

/// Samples are produced in fixed-size chunks; chunk c draws its normals from
/// NormalStream(seed, c). Output depends on (seed, chunk_size) only, never on
/// the thread count.
struct SamplerOptions {
    std::size_t chunk_size = 65536;
    unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

inline constexpr double kDefaultConfidence = 0.99;

struct TailEstimate {
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t exceedances = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double confidence = kDefaultConfidence;
};

/// n draws of T = sum a_k z_k^2 + b_k z_k. Throws ValidationError for n == 0 or chunk_size == 0.
std::vector<double> sample(const DiagonalForm& form, std::size_t n, std::uint64_t seed,
                           const SamplerOptions& options = {});
/// n draws of T = z^T A z + b^T z, using the same chunked streams.
std::vector<double> sample(const QuadraticForm& form, std::size_t n, std::uint64_t seed,
                           const SamplerOptions& options = {});

/// Exact two-sided Clopper-Pearson interval for k successes in n trials.
std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence);

/// Fraction of samples with T >= t (upper) or T <= t (lower), with its
/// Clopper-Pearson interval. The seed field is left at 0.
TailEstimate empirical_tail(std::span<const double> samples, double t, Direction direction,
                            double confidence = kDefaultConfidence);

/// sample + empirical_tail, one estimate per threshold from a single sample set.
std::vector<TailEstimate> estimate_tails(const DiagonalForm& form, std::span<const double> thresholds,
                                         Direction direction, std::size_t n, std::uint64_t seed,
                                         double confidence = kDefaultConfidence,
                                         const SamplerOptions& options = {});

double normal_cdf(double x) noexcept;

/// Exact P(a z^2 + b z <= t) for a single standard normal z.
double cdf_p1(double a, double b, double t) noexcept;

struct CfOptions {
    double tolerance = 1e-6;  // absolute, on the returned probability
};

/// P(T <= t) by inverting the characteristic function of T (Gil-Pelaez / Imhof).
///
/// Throws DegenerateFormError for a = b = 0 and NumericalError, carrying the
/// achieved accuracy estimate, when the quadrature misses options.tolerance.
double cdf_cf(const DiagonalForm& form, double t, const CfOptions& options = {});

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2|.
double ks_statistic(std::span<const double> x, std::span<const double> y);
/// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)) of the two-sample test.
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

}  // namespace qfb
