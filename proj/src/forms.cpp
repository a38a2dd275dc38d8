#include "qfbound/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfbound/error.hpp"

namespace qfb {
namespace {

bool finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

DiagonalForm::DiagonalForm(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
    if (a_.empty()) throw ValidationError("diagonal form needs at least one coefficient");
    if (a_.size() != b_.size())
        throw ValidationError("diagonal form: a has " + std::to_string(a_.size()) +
                              " entries but b has " + std::to_string(b_.size()));
    if (!finite(a_) || !finite(b_)) throw ValidationError("diagonal form: non-finite coefficient");
}

bool DiagonalForm::deterministic() const noexcept {
    auto zero = [](double v) { return v == 0.0; };
    return std::all_of(a_.begin(), a_.end(), zero) && std::all_of(b_.begin(), b_.end(), zero);
}

DiagonalForm DiagonalForm::negated() const {
    std::vector<double> a(a_.size()), b(b_.size());
    std::transform(a_.begin(), a_.end(), a.begin(), [](double v) { return -v; });
    std::transform(b_.begin(), b_.end(), b.begin(), [](double v) { return -v; });
    return DiagonalForm(std::move(a), std::move(b));
}

QuadraticForm::QuadraticForm(Matrix matrix, std::vector<double> b)
    : matrix_(std::move(matrix)), b_(std::move(b)) {
    if (!matrix_.square())
        throw ValidationError("quadratic form: matrix is " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.cols()) + ", expected square");
    if (matrix_.rows() == 0) throw ValidationError("quadratic form: dimension must be at least 1");
    if (b_.size() != matrix_.rows())
        throw ValidationError("quadratic form: b has " + std::to_string(b_.size()) +
                              " entries, matrix is " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.rows()));
    if (!matrix_.all_finite() || !finite(b_))
        throw ValidationError("quadratic form: non-finite entry");
}

}  // namespace qfb
