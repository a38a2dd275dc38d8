#include "form_document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfb::cli {
namespace {

using nlohmann::json;

struct Position {
    std::size_t line;
    std::size_t column;
};

Position position_of(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    Position p{1, 1};
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

class JsonReader {
public:
    JsonReader(const std::string& text, const std::string& source) : text_(text), source_(source) {}

    [[noreturn]] void fail_at_key(const std::string& key, const std::string& detail) const {
        const auto at = text_.find("\"" + key + "\"");
        const std::size_t line = at == std::string::npos ? 1 : position_of(text_, at).line;
        throw InputError(source_ + ":" + std::to_string(line) + ": " + detail);
    }

    std::vector<double> numbers(const json& node, const std::string& key) const {
        if (!node.is_array()) fail_at_key(key, "'" + key + "' must be an array of numbers");
        std::vector<double> out;
        out.reserve(node.size());
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto& v = node[i];
            if (!v.is_number())
                fail_at_key(key, "'" + key + "'[" + std::to_string(i) + "] is not a number");
            const double d = v.get<double>();
            if (!std::isfinite(d)) fail_at_key(key, "'" + key + "'[" + std::to_string(i) + "] is not finite");
            out.push_back(d);
        }
        return out;
    }

    FormDocument read() const {
        json root;
        try {
            root = json::parse(text_);
        } catch (const json::parse_error& e) {
            // e.byte is 1-based and points just past the offending character
            const auto p = position_of(text_, e.byte == 0 ? 0 : e.byte - 1);
            std::string detail = e.what();
            if (const auto cut = detail.find("; "); cut != std::string::npos) detail = detail.substr(cut + 2);
            throw InputError(source_ + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": " +
                             detail);
        }
        if (!root.is_object()) throw InputError(source_ + ":1: top-level value must be a JSON object");

        for (const auto& [key, value] : root.items()) {
            if (key != "a" && key != "b" && key != "matrix" && key != "label")
                fail_at_key(key, "unknown key '" + key + "' (expected a, b, matrix, label)");
        }

        FormDocument doc;
        if (root.contains("label")) {
            if (!root["label"].is_string()) fail_at_key("label", "'label' must be a string");
            doc.label = root["label"].get<std::string>();
        }
        const bool has_a = root.contains("a");
        const bool has_matrix = root.contains("matrix");
        if (has_a == has_matrix) {
            throw InputError(source_ + ":1: document needs exactly one of 'a' or 'matrix'");
        }
        if (!root.contains("b")) throw InputError(source_ + ":1: document is missing 'b'");
        doc.b = numbers(root["b"], "b");

        if (has_a) {
            doc.a = numbers(root["a"], "a");
            if (doc.a.empty()) fail_at_key("a", "'a' must not be empty");
            if (doc.a.size() != doc.b.size())
                fail_at_key("b", "'b' has " + std::to_string(doc.b.size()) + " entries but 'a' has " +
                                     std::to_string(doc.a.size()));
            doc.dimension = doc.a.size();
            return doc;
        }

        const auto& rows = root["matrix"];
        if (!rows.is_array() || rows.empty()) fail_at_key("matrix", "'matrix' must be a nonempty array of rows");
        const std::size_t p = rows.size();
        std::vector<double> flat;
        flat.reserve(p * p);
        for (std::size_t r = 0; r < p; ++r) {
            auto row = numbers(rows[r], "matrix");
            if (row.size() != p)
                fail_at_key("matrix", "'matrix' row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                                          " entries, expected " + std::to_string(p) + " (matrix must be square)");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        if (doc.b.size() != p)
            fail_at_key("b", "'b' has " + std::to_string(doc.b.size()) + " entries but 'matrix' is " +
                                 std::to_string(p) + "x" + std::to_string(p));
        doc.matrix = std::move(flat);
        doc.dimension = p;
        return doc;
    }

private:
    const std::string& text_;
    const std::string& source_;
};

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

double parse_cell(const std::string& cell, const std::string& where) {
    double v = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    if (!cell.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || cell.empty())
        throw InputError(where + ": '" + cell + "' is not a number");
    if (!std::isfinite(v)) throw InputError(where + ": '" + cell + "' is not finite");
    return v;
}

FormDocument read_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    FormDocument doc;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = source + ":" + std::to_string(line_no);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto comma = content.find(',');
        if (comma == std::string::npos || content.find(',', comma + 1) != std::string::npos)
            throw InputError(where + ": expected exactly two comma-separated columns");
        const std::string first = trim(std::string_view(content).substr(0, comma));
        const std::string second = trim(std::string_view(content).substr(comma + 1));
        if (!header_seen) {
            if (first != "a" || second != "b") throw InputError(where + ": expected header 'a,b'");
            header_seen = true;
            continue;
        }
        doc.a.push_back(parse_cell(first, where));
        doc.b.push_back(parse_cell(second, where));
    }
    if (!header_seen) throw InputError(source + ":1: empty CSV document (expected header 'a,b')");
    if (doc.a.empty()) throw InputError(source + ":" + std::to_string(line_no) + ": CSV document has no rows");
    doc.dimension = doc.a.size();
    return doc;
}

}  // namespace

FormDocument parse_form_document(const std::string& text, const std::string& source_name, bool csv) {
    if (csv) return read_csv(text, source_name);
    return JsonReader(text, source_name).read();
}

FormDocument load_form_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ":0: cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return parse_form_document(buf.str(), path.string(), ext == ".csv");
}

}  // namespace qfb::cli
