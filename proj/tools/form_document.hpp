#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfb::cli {

/// Malformed input document. The message is already anchored as
/// "path:line[:column]: detail".
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Either {matrix, b} (p x p, row major) or {a, b}, plus an optional label.
struct FormDocument {
    std::optional<std::string> label;
    std::size_t dimension = 0;
    std::optional<std::vector<double>> matrix;
    std::vector<double> a;  // empty for matrix documents
    std::vector<double> b;

    bool is_matrix() const noexcept { return matrix.has_value(); }
};

/// JSON document, or two-column CSV (header "a,b") for the diagonal form.
/// CSV is chosen by a ".csv" extension; anything else is parsed as JSON.
FormDocument parse_form_document(const std::string& text, const std::string& source_name, bool csv);
FormDocument load_form_document(const std::filesystem::path& path);

}  // namespace qfb::cli
