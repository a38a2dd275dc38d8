#include "qfbound/qfbound.h"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "qfbound/bounds.hpp"
#include "qfbound/error.hpp"
#include "qfbound/mgf.hpp"
#include "qfbound/oracle.hpp"
#include "qfbound/spectral.hpp"
#include "qfbound/version.hpp"

struct qfb_form {
    qfb::DiagonalForm diagonal;
    std::optional<qfb::Matrix> basis;
};

namespace {

thread_local std::string last_error;

qfb_status fail(qfb_status code, const char* what) {
    last_error = what;
    return code;
}

template <typename F>
qfb_status guarded(F&& f) noexcept {
    try {
        f();
        return QFB_OK;
    } catch (const qfb::Error& e) {
        switch (e.kind()) {
            case qfb::ErrorKind::validation: return fail(QFB_ERR_INVALID_ARGUMENT, e.what());
            case qfb::ErrorKind::degenerate: return fail(QFB_ERR_DEGENERATE, e.what());
            case qfb::ErrorKind::domain: return fail(QFB_ERR_DOMAIN, e.what());
            case qfb::ErrorKind::numerical: return fail(QFB_ERR_NUMERICAL, e.what());
        }
        return fail(QFB_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(QFB_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QFB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QFB_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw qfb::ValidationError(what);
}

qfb::Direction to_direction(qfb_direction d) {
    require(d == QFB_UPPER || d == QFB_LOWER, "direction must be QFB_UPPER or QFB_LOWER");
    return d == QFB_UPPER ? qfb::Direction::upper : qfb::Direction::lower;
}

qfb::FormStats to_stats(const qfb_stats* s) {
    require(s != nullptr, "stats pointer is null");
    return {s->mean, s->u_sq, s->a_plus, s->a_minus};
}

qfb_tail_bound to_c(const qfb::TailBound& t) {
    return {t.direction == qfb::Direction::upper ? QFB_UPPER : QFB_LOWER, t.x, t.threshold, t.prob_bound};
}

}  // namespace

extern "C" {

const char* qfb_version(void) { return qfb::kVersion; }

const char* qfb_last_error(void) { return last_error.c_str(); }

qfb_status qfb_form_create_diagonal(const double* a, const double* b, size_t p, qfb_form** out) {
    return guarded([&] {
        require(out != nullptr && a != nullptr && b != nullptr, "null pointer argument");
        require(p >= 1, "dimension must be at least 1");
        *out = nullptr;
        *out = new qfb_form{qfb::DiagonalForm({a, a + p}, {b, b + p}), std::nullopt};
    });
}

qfb_status qfb_form_create_matrix(const double* matrix, const double* b, size_t p, qfb_form** out) {
    return guarded([&] {
        require(out != nullptr && matrix != nullptr && b != nullptr, "null pointer argument");
        require(p >= 1, "dimension must be at least 1");
        *out = nullptr;
        qfb::QuadraticForm form(qfb::Matrix(p, p, std::vector<double>(matrix, matrix + p * p)), {b, b + p});
        auto red = qfb::reduce(form);
        *out = new qfb_form{red.diagonal_form(), std::move(red.basis)};
    });
}

void qfb_form_destroy(qfb_form* form) { delete form; }

size_t qfb_form_dimension(const qfb_form* form) { return form ? form->diagonal.dimension() : 0; }

int qfb_form_is_reduced(const qfb_form* form) { return form && form->basis ? 1 : 0; }

int qfb_form_is_deterministic(const qfb_form* form) { return form && form->diagonal.deterministic() ? 1 : 0; }

qfb_status qfb_form_coefficients(const qfb_form* form, double* a, double* b) {
    return guarded([&] {
        require(form != nullptr && a != nullptr && b != nullptr, "null pointer argument");
        std::copy(form->diagonal.a().begin(), form->diagonal.a().end(), a);
        std::copy(form->diagonal.b().begin(), form->diagonal.b().end(), b);
    });
}

qfb_status qfb_form_basis(const qfb_form* form, double* basis) {
    return guarded([&] {
        require(form != nullptr && basis != nullptr, "null pointer argument");
        require(form->basis.has_value(), "form was not built from a matrix; it has no eigenbasis");
        std::copy(form->basis->data().begin(), form->basis->data().end(), basis);
    });
}

qfb_status qfb_form_stats(const qfb_form* form, qfb_stats* out) {
    return guarded([&] {
        require(form != nullptr && out != nullptr, "null pointer argument");
        const auto s = qfb::form_stats(form->diagonal);
        *out = {s.mean, s.u_sq, s.a_plus, s.a_minus};
    });
}

qfb_status qfb_threshold(const qfb_stats* stats, double x, qfb_direction direction, qfb_tail_bound* out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        *out = to_c(qfb::threshold(to_stats(stats), x, to_direction(direction)));
    });
}

qfb_status qfb_tail_exponent(const qfb_stats* stats, double deviation, qfb_direction direction,
                             qfb_tail_bound* out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        *out = to_c(qfb::tail_exponent(to_stats(stats), deviation, to_direction(direction)));
    });
}

qfb_status qfb_envelope_threshold(double u, double v, double x, double* out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        *out = qfb::envelope_threshold(u, v, x);
    });
}

qfb_status qfb_union_threshold(const qfb_stats* stats, size_t count, double x, qfb_direction direction,
                               qfb_tail_bound* out) {
    return guarded([&] {
        require(stats != nullptr && out != nullptr, "null pointer argument");
        std::vector<qfb::FormStats> family;
        family.reserve(count);
        for (size_t i = 0; i < count; ++i) family.push_back(to_stats(stats + i));
        const auto bounds = qfb::union_threshold(family, x, to_direction(direction));
        std::transform(bounds.begin(), bounds.end(), out, to_c);
    });
}

qfb_status qfb_log_mgf_centered(const qfb_form* form, double y, double* out) {
    return guarded([&] {
        require(form != nullptr && out != nullptr, "null pointer argument");
        *out = qfb::log_mgf_centered(form->diagonal, y);
    });
}

qfb_status qfb_envelope_rhs(const qfb_stats* stats, double y, double* out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        *out = qfb::envelope_rhs(to_stats(stats), y);
    });
}

qfb_status qfb_check_envelope(const qfb_form* form, size_t grid_size, qfb_envelope_check* out) {
    return guarded([&] {
        require(form != nullptr && out != nullptr, "null pointer argument");
        const auto c = qfb::check_envelope(form->diagonal, grid_size);
        *out = {c.grid_size, c.y_max,        c.max_excess, c.worst_y, c.min_rhs_ratio,
                c.violations, c.first_violation.value_or(c.grid_size)};
    });
}

qfb_status qfb_sample(const qfb_form* form, size_t n, uint64_t seed, size_t chunk_size, double* out) {
    return guarded([&] {
        require(form != nullptr && out != nullptr, "null pointer argument");
        qfb::SamplerOptions opts;
        if (chunk_size != 0) opts.chunk_size = chunk_size;
        const auto draws = qfb::sample(form->diagonal, n, seed, opts);
        std::copy(draws.begin(), draws.end(), out);
    });
}

qfb_status qfb_estimate_tails(const qfb_form* form, const double* thresholds, size_t count,
                              qfb_direction direction, size_t n, uint64_t seed, double confidence,
                              qfb_tail_estimate* out) {
    return guarded([&] {
        require(form != nullptr && thresholds != nullptr && out != nullptr, "null pointer argument");
        const auto est = qfb::estimate_tails(form->diagonal, {thresholds, count}, to_direction(direction), n, seed,
                                             confidence);
        std::transform(est.begin(), est.end(), out, [](const qfb::TailEstimate& e) {
            return qfb_tail_estimate{e.p_hat, e.ci_low, e.ci_high, e.exceedances, e.n, e.seed, e.confidence};
        });
    });
}

qfb_status qfb_cdf(const qfb_form* form, double t, double* out) {
    return guarded([&] {
        require(form != nullptr && out != nullptr, "null pointer argument");
        *out = qfb::cdf_cf(form->diagonal, t);
    });
}

qfb_status qfb_cdf_p1(double a, double b, double t, double* out) {
    return guarded([&] {
        require(out != nullptr, "null pointer argument");
        *out = qfb::cdf_p1(a, b, t);
    });
}

}  // extern "C"
