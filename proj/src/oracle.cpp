#include "qfbound/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "qfbound/error.hpp"
#include "qfbound/rng.hpp"

namespace qfb {
namespace {

template <typename Fill>
void run_chunks(std::size_t n, const SamplerOptions& options, Fill&& fill) {
    if (n == 0) throw ValidationError("sample count must be at least 1");
    if (options.chunk_size == 0) throw ValidationError("chunk size must be at least 1");
    const std::size_t chunks = (n + options.chunk_size - 1) / options.chunk_size;
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));

    auto body = [&](std::size_t c) {
        const std::size_t begin = c * options.chunk_size;
        const std::size_t end = std::min(n, begin + options.chunk_size);
        fill(c, begin, end);
    };
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) body(c);
        });
}

}  // namespace

std::vector<double> sample(const DiagonalForm& form, std::size_t n, std::uint64_t seed,
                           const SamplerOptions& options) {
    std::vector<double> out(n);
    const auto a = form.a();
    const auto b = form.b();
    run_chunks(n, options, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        NormalStream rng(seed, chunk);
        for (std::size_t i = begin; i < end; ++i) {
            double t = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double z = rng.next();
                t += (a[k] * z + b[k]) * z;
            }
            out[i] = t;
        }
    });
    return out;
}

std::vector<double> sample(const QuadraticForm& form, std::size_t n, std::uint64_t seed,
                           const SamplerOptions& options) {
    std::vector<double> out(n);
    const std::size_t p = form.dimension();
    const Matrix& m = form.matrix();
    const auto b = form.b();
    run_chunks(n, options, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        NormalStream rng(seed, chunk);
        std::vector<double> z(p);
        for (std::size_t i = begin; i < end; ++i) {
            for (auto& zk : z) zk = rng.next();
            double t = 0.0;
            for (std::size_t r = 0; r < p; ++r) {
                double row = b[r];
                for (std::size_t c = 0; c < p; ++c) row += m(r, c) * z[c];
                t += z[r] * row;
            }
            out[i] = t;
        }
    });
    return out;
}

std::pair<double, double> clopper_pearson(std::uint64_t k, std::uint64_t n, double confidence) {
    if (n == 0) throw ValidationError("clopper_pearson: no trials");
    if (k > n) throw ValidationError("clopper_pearson: more successes than trials");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw ValidationError("confidence level must lie in (0, 1), got " + format_value(confidence));
    using boost::math::binomial_distribution;
    const double tail = 0.5 * (1.0 - confidence);
    const auto trials = static_cast<double>(n);
    const auto successes = static_cast<double>(k);
    const double lo = k == 0 ? 0.0 : binomial_distribution<>::find_lower_bound_on_p(trials, successes, tail);
    const double hi = k == n ? 1.0 : binomial_distribution<>::find_upper_bound_on_p(trials, successes, tail);
    return {lo, hi};
}

TailEstimate empirical_tail(std::span<const double> samples, double t, Direction direction, double confidence) {
    if (samples.empty()) throw ValidationError("empirical_tail: no samples");
    std::uint64_t count = 0;
    if (direction == Direction::upper) {
        for (double s : samples) count += s >= t;
    } else {
        for (double s : samples) count += s <= t;
    }
    TailEstimate e;
    e.n = samples.size();
    e.exceedances = count;
    e.p_hat = static_cast<double>(count) / static_cast<double>(e.n);
    std::tie(e.ci_low, e.ci_high) = clopper_pearson(count, e.n, confidence);
    // The interval is computed independently of p_hat; guard the ordering invariant.
    e.ci_low = std::min(e.ci_low, e.p_hat);
    e.ci_high = std::max(e.ci_high, e.p_hat);
    e.confidence = confidence;
    return e;
}

std::vector<TailEstimate> estimate_tails(const DiagonalForm& form, std::span<const double> thresholds,
                                         Direction direction, std::size_t n, std::uint64_t seed,
                                         double confidence, const SamplerOptions& options) {
    const auto draws = sample(form, n, seed, options);
    std::vector<TailEstimate> out;
    out.reserve(thresholds.size());
    for (double t : thresholds) {
        auto e = empirical_tail(draws, t, direction, confidence);
        e.seed = seed;
        out.push_back(e);
    }
    return out;
}

double ks_statistic(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw ValidationError("ks_statistic: empty sample");
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double nx = static_cast<double>(xs.size());
    const double ny = static_cast<double>(ys.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) throw ValidationError("ks_critical_value: bad arguments");
    const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    return c * std::sqrt((dn + dm) / (dn * dm));
}

}  // namespace qfb
