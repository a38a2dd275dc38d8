#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "form_document.hpp"
#include "qfbound/qfbound.h"

namespace qfb::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

/// Carries the process exit code up to run().
struct Failure {
    int code;
    std::string message;
};

struct FormDeleter {
    void operator()(qfb_form* f) const noexcept { qfb_form_destroy(f); }
};
using FormHandle = std::unique_ptr<qfb_form, FormDeleter>;

int exit_code_for(qfb_status s) {
    switch (s) {
        case QFB_OK: return kOk;
        case QFB_ERR_INVALID_ARGUMENT:
        case QFB_ERR_DEGENERATE:
        case QFB_ERR_DOMAIN: return kValidationError;
        case QFB_ERR_NUMERICAL:
        case QFB_ERR_INTERNAL: return kNumericalError;
    }
    return kNumericalError;
}

void check(qfb_status s) {
    if (s != QFB_OK) throw Failure{exit_code_for(s), qfb_last_error()};
}

FormHandle make_form(const FormDocument& doc) {
    qfb_form* raw = nullptr;
    if (doc.is_matrix()) {
        check(qfb_form_create_matrix(doc.matrix->data(), doc.b.data(), doc.dimension, &raw));
    } else {
        check(qfb_form_create_diagonal(doc.a.data(), doc.b.data(), doc.dimension, &raw));
    }
    return FormHandle(raw);
}

qfb_stats stats_of(const qfb_form* form) {
    qfb_stats s{};
    check(qfb_form_stats(form, &s));
    return s;
}

qfb_direction to_direction(const std::string& d) { return d == "upper" ? QFB_UPPER : QFB_LOWER; }

ordered_json label_json(const FormDocument& doc) {
    return doc.label ? ordered_json(*doc.label) : ordered_json(nullptr);
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Failure{kInputError, "cannot open '" + path.string() + "' for writing"};
    f << body;
    if (!f.flush()) throw Failure{kInputError, "failed writing '" + path.string() + "'"};
}

void emit(const std::string& body, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << body;
    } else {
        write_file(out_path, body);
    }
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
}

std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    std::ostringstream s;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s << "  ";
            s << std::setw(static_cast<int>(width[i])) << cells[i];
        }
        s << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s.str();
}

struct Common {
    std::string input;
    std::string direction = "upper";
    std::string format = "text";
    std::string out_path;
};

// bound ----------------------------------------------------------------------

int cmd_bound(const Common& c, std::vector<double> xs, std::ostream& out) {
    const auto doc = load_form_document(c.input);
    const auto form = make_form(doc);
    const auto stats = stats_of(form.get());
    std::sort(xs.begin(), xs.end());

    std::vector<qfb_tail_bound> bounds;
    for (double x : xs) {
        qfb_tail_bound b{};
        check(qfb_threshold(&stats, x, to_direction(c.direction), &b));
        bounds.push_back(b);
    }

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "bound";
        j["tool_version"] = qfb_version();
        j["label"] = label_json(doc);
        j["direction"] = c.direction;
        j["mean"] = stats.mean;
        j["u_sq"] = stats.u_sq;
        j["a_plus"] = stats.a_plus;
        j["a_minus"] = stats.a_minus;
        auto& rows = j["rows"] = ordered_json::array();
        for (const auto& b : bounds)
            rows.push_back({{"x", b.x}, {"threshold", b.threshold}, {"bound", b.prob_bound}});
        emit(j.dump(2) + "\n", c.out_path, out);
        return kOk;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : bounds) rows.push_back({format_number(b.x), format_number(b.threshold), format_number(b.prob_bound)});
    const std::vector<std::string> header{"x", "threshold", "bound"};
    if (c.format == "csv") {
        emit(csv_table(header, rows), c.out_path, out);
    } else {
        std::string body = "direction: " + c.direction + "\nmean: " + format_number(stats.mean) +
                           "\nu_sq: " + format_number(stats.u_sq) + "\na_plus: " + format_number(stats.a_plus) +
                           "\na_minus: " + format_number(stats.a_minus) + "\n" + text_table(header, rows);
        emit(body, c.out_path, out);
    }
    return kOk;
}

// invert ---------------------------------------------------------------------

int cmd_invert(const Common& c, double deviation, std::ostream& out) {
    const auto doc = load_form_document(c.input);
    const auto form = make_form(doc);
    const auto stats = stats_of(form.get());
    qfb_tail_bound b{};
    check(qfb_tail_exponent(&stats, deviation, to_direction(c.direction), &b));

    if (c.format == "json") {
        ordered_json j;
        j["command"] = "invert";
        j["tool_version"] = qfb_version();
        j["label"] = label_json(doc);
        j["direction"] = c.direction;
        j["deviation"] = deviation;
        j["x"] = b.x;
        j["bound"] = b.prob_bound;
        j["threshold"] = b.threshold;
        emit(j.dump(2) + "\n", c.out_path, out);
        return kOk;
    }
    const std::vector<std::string> header{"deviation", "x", "bound", "threshold"};
    const std::vector<std::vector<std::string>> rows{
        {format_number(deviation), format_number(b.x), format_number(b.prob_bound), format_number(b.threshold)}};
    emit(c.format == "csv" ? csv_table(header, rows) : "direction: " + c.direction + "\n" + text_table(header, rows),
         c.out_path, out);
    return kOk;
}

// verify ---------------------------------------------------------------------

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::size_t begin = 0;
    for (;;) {
        const auto colon = text.find(':', begin);
        const std::string piece = text.substr(begin, colon == std::string::npos ? std::string::npos : colon - begin);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size() || !std::isfinite(v))
            throw Failure{kInputError, "--x-grid: '" + text + "' is not START:STOP:STEP"};
        parts.push_back(v);
        if (colon == std::string::npos) break;
        begin = colon + 1;
    }
    if (parts.size() != 3) throw Failure{kInputError, "--x-grid: '" + text + "' is not START:STOP:STEP"};
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(start > 0.0)) throw Failure{kValidationError, "--x-grid: START must be positive"};
    if (!(step > 0.0) || stop < start) throw Failure{kValidationError, "--x-grid: need STEP > 0 and STOP >= START"};
    // inclusive of STOP up to rounding in the step count
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw Failure{kValidationError, "--x-grid: more than 100000 grid points"};
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = start + static_cast<double>(i) * step;
    return xs;
}

struct VerifyFlags {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    std::string grid;
    double confidence = 0.99;
};

std::pair<std::filesystem::path, std::filesystem::path> report_paths(const std::string& out_path) {
    std::filesystem::path stem(out_path);
    const auto ext = stem.extension();
    if (ext == ".csv" || ext == ".json") stem.replace_extension();
    auto csv = stem, json = stem;
    csv += ".csv";
    json += ".json";
    return {csv, json};
}

int cmd_verify(const Common& c, const VerifyFlags& f, std::ostream& out) {
    if (f.samples < 10000) throw Failure{kValidationError, "--samples must be at least 10000"};
    if (!(f.confidence > 0.0 && f.confidence < 1.0))
        throw Failure{kValidationError, "--confidence must lie in (0, 1)"};
    const auto xs = parse_grid(f.grid);
    const auto doc = load_form_document(c.input);
    const auto form = make_form(doc);
    if (qfb_form_is_deterministic(form.get()))
        throw Failure{kValidationError, "form is deterministic (a = b = 0); there is no tail to verify"};
    const auto stats = stats_of(form.get());
    const auto dir = to_direction(c.direction);

    std::vector<qfb_tail_bound> bounds(xs.size());
    std::vector<double> thresholds(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        check(qfb_threshold(&stats, xs[i], dir, &bounds[i]));
        thresholds[i] = bounds[i].threshold;
    }
    std::vector<qfb_tail_estimate> est(xs.size());
    check(qfb_estimate_tails(form.get(), thresholds.data(), thresholds.size(), dir, f.samples, f.seed, f.confidence,
                             est.data()));

    bool all_pass = true;
    std::vector<std::vector<std::string>> rows;
    ordered_json j;
    j["command"] = "verify";
    j["tool_version"] = qfb_version();
    j["label"] = label_json(doc);
    j["direction"] = c.direction;
    j["samples"] = f.samples;
    j["seed"] = f.seed;
    j["confidence"] = f.confidence;
    auto& jrows = j["rows"] = ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool pass = est[i].ci_low <= bounds[i].prob_bound;
        all_pass = all_pass && pass;
        rows.push_back({format_number(bounds[i].x), format_number(bounds[i].threshold),
                        format_number(bounds[i].prob_bound), format_number(est[i].p_hat),
                        format_number(est[i].ci_low), format_number(est[i].ci_high), pass ? "true" : "false"});
        jrows.push_back({{"x", bounds[i].x},
                         {"threshold", bounds[i].threshold},
                         {"bound", bounds[i].prob_bound},
                         {"p_hat", est[i].p_hat},
                         {"ci_low", est[i].ci_low},
                         {"ci_high", est[i].ci_high},
                         {"pass", pass}});
    }
    j["passed"] = all_pass;

    const std::vector<std::string> header{"x", "threshold", "bound", "p_hat", "ci_low", "ci_high", "pass"};
    const auto [csv_path, json_path] = report_paths(c.out_path);
    write_file(csv_path, csv_table(header, rows));
    write_file(json_path, j.dump(2) + "\n");

    out << "verify " << c.direction << " tail, n = " << f.samples << ", seed = " << f.seed << "\n"
        << text_table(header, rows) << (all_pass ? "all rows pass" : "VERIFICATION FAILED") << "\n";
    return all_pass ? kOk : kVerificationFailed;
}

// mgf-check ------------------------------------------------------------------

int cmd_mgf_check(const Common& c, std::size_t grid, std::ostream& out) {
    const auto doc = load_form_document(c.input);
    const auto form = make_form(doc);
    qfb_envelope_check r{};
    check(qfb_check_envelope(form.get(), grid, &r));
    const bool ok = r.violations == 0;
    if (c.format == "json") {
        ordered_json j;
        j["command"] = "mgf-check";
        j["tool_version"] = qfb_version();
        j["label"] = label_json(doc);
        j["grid_size"] = r.grid_size;
        j["y_max"] = r.y_max;
        j["max_excess"] = r.max_excess;
        j["worst_y"] = r.worst_y;
        j["min_relative_margin"] = r.min_rhs_ratio;
        j["violations"] = r.violations;
        j["first_violation_y"] =
            ok ? ordered_json(nullptr) : ordered_json(r.y_max * static_cast<double>(r.first_violation + 1) /
                                                      static_cast<double>(r.grid_size));
        j["passed"] = ok;
        emit(j.dump(2) + "\n", c.out_path, out);
    } else {
        std::ostringstream s;
        s << "grid_size: " << r.grid_size << "\ny_max: " << format_number(r.y_max)
          << "\nmax_excess (lhs - rhs): " << format_number(r.max_excess) << "\nworst_y: " << format_number(r.worst_y)
          << "\nmin_relative_margin: " << format_number(r.min_rhs_ratio) << "\nviolations: " << r.violations << "\n"
          << (ok ? "envelope holds on the grid" : "ENVELOPE VIOLATED") << "\n";
        emit(s.str(), c.out_path, out);
    }
    return ok ? kOk : kVerificationFailed;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bernstein-type tail bounds for Gaussian quadratic forms T = z'Az + b'z", "qfbound"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qfb_version()));

    auto add_common = [](CLI::App* sub, Common& c, bool with_direction, bool with_format) {
        sub->add_option("--input", c.input, "Form document (JSON, or CSV with header a,b)")
            ->required()
            ->check(CLI::ExistingFile);
        if (with_direction)
            sub->add_option("--direction", c.direction, "Tail direction")->check(CLI::IsMember({"upper", "lower"}));
        if (with_format) {
            sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
            sub->add_option("--out", c.out_path, "Write the report here instead of stdout");
        }
    };

    Common bound_c, invert_c, verify_c, mgf_c;
    std::vector<double> xs;
    double deviation = 0.0;
    VerifyFlags vf;
    std::size_t grid = 256;

    auto* bound = app.add_subcommand("bound", "Thresholds exceeded with probability at most exp(-x)");
    add_common(bound, bound_c, true, true);
    bound->add_option("--x", xs, "Comma-separated exponents")->required()->delimiter(',');

    auto* invert = app.add_subcommand("invert", "Exponent x whose threshold sits at mean +/- deviation");
    add_common(invert, invert_c, true, true);
    invert->add_option("--deviation", deviation, "Distance of the threshold from the mean")->required();

    auto* verify = app.add_subcommand("verify", "Monte Carlo check of the bounds on an x grid");
    add_common(verify, verify_c, true, false);
    verify->add_option("--samples", vf.samples, "Monte Carlo sample count (>= 10000)");
    verify->add_option("--seed", vf.seed, "Generator seed");
    verify->add_option("--x-grid", vf.grid, "START:STOP:STEP, inclusive")->required();
    verify->add_option("--confidence", vf.confidence, "Clopper-Pearson level");
    verify->add_option("--out", verify_c.out_path, "Report path; PATH.csv and PATH.json are written")->required();

    auto* mgf = app.add_subcommand("mgf-check", "Check the log-MGF envelope on a y grid");
    add_common(mgf, mgf_c, false, true);
    mgf->add_option("--grid", grid, "Number of grid points")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*bound) return cmd_bound(bound_c, xs, out);
        if (*invert) return cmd_invert(invert_c, deviation, out);
        if (*verify) return cmd_verify(verify_c, vf, out);
        if (*mgf) return cmd_mgf_check(mgf_c, grid, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    }
    return kInputError;
}

}  // namespace qfb::cli
