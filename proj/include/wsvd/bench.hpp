#pragma once

#include "wsvd/approx.hpp"
#include "wsvd/basis.hpp"
#include "wsvd/cubature.hpp"
#include "wsvd/geometry.hpp"
#include "wsvd/kernels.hpp"
#include "wsvd/types.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsvd {

enum class TestFunctionKind { Franke, Oscillatory, SingularExp, NativeGauss };

/**
 * Closed-form bivariate test functions: Franke's four-term exponential
 * benchmark, the oscillatory cos(20(x+y)), an exponential with a derivative
 * kink along the diagonal, and a three-translate Gaussian combination that
 * lies in the native space of the eps=4 Gaussian kernel.
 */
struct TestFunction {
    TestFunctionKind kind = TestFunctionKind::Franke;

    [[nodiscard]] double operator()(const Point& p) const {
        const double x = p.x();
        const double y = p.y();
        switch (kind) {
            case TestFunctionKind::Franke: {
                const double a = 0.75 * std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)) / 4.0);
                const double b = 0.75 * std::exp(-(9 * x + 1) * (9 * x + 1) / 49.0 - (9 * y + 1) / 10.0);
                const double c = 0.5 * std::exp(-((9 * x - 7) * (9 * x - 7) + (9 * y - 3) * (9 * y - 3)) / 4.0);
                const double d = 0.2 * std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7));
                return a + b + c - d;
            }
            case TestFunctionKind::Oscillatory:
                return std::cos(20.0 * (x + y));
            case TestFunctionKind::SingularExp:
                return std::exp(std::abs(x - y)) - 1.0;
            case TestFunctionKind::NativeGauss: {
                const Kernel g{KernelFamily::Gaussian, 4.0};
                const auto translate = [&](double cx, double cy) {
                    return phi(g, std::hypot(x - cx, y - cy));
                };
                return -2.0 * translate(0.5, 0.5) + translate(0.0, 0.0) + 3.0 * translate(0.7, 0.7);
            }
        }
        return 0.0;
    }
};

[[nodiscard]] inline TestFunction test_function(TestFunctionKind kind) { return {kind}; }

[[nodiscard]] inline const char* test_function_name(TestFunctionKind kind) {
    switch (kind) {
        case TestFunctionKind::Franke:      return "franke";
        case TestFunctionKind::Oscillatory: return "oscillatory";
        case TestFunctionKind::SingularExp: return "singexp";
        case TestFunctionKind::NativeGauss: return "nativegauss";
    }
    return "";
}

[[nodiscard]] inline std::optional<TestFunctionKind> test_function_from_name(std::string_view name) {
    if (name == "franke")      return TestFunctionKind::Franke;
    if (name == "oscillatory") return TestFunctionKind::Oscillatory;
    if (name == "singexp")     return TestFunctionKind::SingularExp;
    if (name == "nativegauss") return TestFunctionKind::NativeGauss;
    return std::nullopt;
}

template <class A, class F>
[[nodiscard]] double rmse(A&& approx, F&& f, std::span<const Point> grid) {
    if (grid.empty()) throw EmptyGrid("rmse: empty evaluation grid");
    double acc = 0.0;
    for (const Point& p : grid) {
        const double d = approx(p) - f(p);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(grid.size()));
}

/**
 * One experiment description: kernel and shape parameter (or a candidate
 * grid for the leave-one-out scan), domain and rule kind, node budgets,
 * optional truncation policy, test function, evaluation grid resolution, and
 * output path. Parsed from flat key=value text; every key has a same-named
 * CLI flag.
 */
struct ExperimentConfig {
    std::string kernel = "gauss";
    double eps = 4.0;
    std::vector<double> eps_grid;
    std::string domain = "square";
    std::string rule = "gl";
    std::vector<int> budgets = {400};
    std::vector<Index> m_list;
    std::optional<double> truncate_tol;
    std::string testfn = "franke";
    int grid = 64;
    std::string out = "results.csv";
    bool timing = false;
};

struct ResultRow {
    Index n = 0;
    Index m = 0;
    double eps = 0.0;
    std::string kernel;
    std::string domain;
    std::string testfn;
    double rmse = 0.0;
    double max_abs_err = 0.0;
    double trace_residual = 0.0;
    double gram_residual = 0.0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double runtime_ms = 0.0;
    std::string error;
};

namespace detail {

[[nodiscard]] inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[nodiscard]] inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        if (pos == std::string_view::npos) {
            parts.push_back(trim(s));
            return parts;
        }
        parts.push_back(trim(s.substr(0, pos)));
        s.remove_prefix(pos + 1);
    }
}

[[nodiscard]] inline double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error("config: cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

[[nodiscard]] inline long parse_long(std::string_view s) {
    long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error("config: cannot parse integer '" + std::string(s) + "'");
    }
    return v;
}

[[nodiscard]] inline bool parse_bool(std::string_view s) {
    if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "off" || s == "no") return false;
    throw Error("config: cannot parse boolean '" + std::string(s) + "'");
}

} // namespace detail

// Candidate list syntax: a single value, a comma list, or an inclusive
// start:step:stop range like 1:0.25:10.
[[nodiscard]] inline std::vector<double> parse_value_grid(std::string_view text) {
    std::vector<double> values;
    if (text.find(':') != std::string_view::npos) {
        const auto parts = detail::split(text, ':');
        if (parts.size() != 3) throw Error("config: range must be start:step:stop");
        const double start = detail::parse_double(parts[0]);
        const double step = detail::parse_double(parts[1]);
        const double stop = detail::parse_double(parts[2]);
        if (!(step > 0.0) || stop < start) throw Error("config: bad range bounds");
        const long count = std::lround(std::floor((stop - start) / step + 1e-9));
        for (long k = 0; k <= count; ++k) values.push_back(start + static_cast<double>(k) * step);
        return values;
    }
    for (const auto part : detail::split(text, ',')) {
        if (!part.empty()) values.push_back(detail::parse_double(part));
    }
    if (values.empty()) throw Error("config: empty value list");
    return values;
}

// Flat key=value text; '#' starts a comment, blank lines ignored.
[[nodiscard]] inline std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> entries;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error("config: expected key=value, got '" + std::string(line) + "'");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw Error("config: empty key");
        entries[std::string(key)] = std::string(value);
    }
    return entries;
}

[[nodiscard]] inline std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("config: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config_text(text);
}

// Builds a config from key=value entries, starting from the defaults.
// Unknown keys are errors rather than silently ignored.
[[nodiscard]] inline ExperimentConfig make_config(const std::map<std::string, std::string>& entries) {
    ExperimentConfig cfg;
    for (const auto& [key, value] : entries) {
        if (key == "kernel") {
            cfg.kernel = value;
        } else if (key == "eps") {
            cfg.eps = detail::parse_double(value);
        } else if (key == "eps_grid") {
            cfg.eps_grid = parse_value_grid(value);
        } else if (key == "domain") {
            cfg.domain = value;
        } else if (key == "rule") {
            cfg.rule = value;
        } else if (key == "n") {
            cfg.budgets.clear();
            for (double v : parse_value_grid(value)) cfg.budgets.push_back(static_cast<int>(std::lround(v)));
        } else if (key == "m") {
            cfg.m_list.clear();
            for (double v : parse_value_grid(value)) cfg.m_list.push_back(static_cast<Index>(std::lround(v)));
        } else if (key == "truncate_tol") {
            cfg.truncate_tol = detail::parse_double(value);
        } else if (key == "testfn") {
            cfg.testfn = value;
        } else if (key == "grid") {
            cfg.grid = static_cast<int>(detail::parse_long(value));
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "timing") {
            cfg.timing = detail::parse_bool(value);
        } else {
            throw Error("config: unknown key '" + key + "'");
        }
    }
    if (!cfg.m_list.empty() && cfg.truncate_tol) {
        throw Error("config: 'm' and 'truncate_tol' are mutually exclusive");
    }
    if (cfg.grid < 1) throw Error("config: grid resolution must be positive");
    for (int b : cfg.budgets) {
        if (b < 1) throw Error("config: budgets must be positive");
    }
    return cfg;
}

namespace detail {

struct ResolvedConfig {
    Kernel kernel;
    Domain domain;
    TestFunction testfn;
};

[[nodiscard]] inline ResolvedConfig resolve_config(const ExperimentConfig& cfg) {
    const auto family = kernel_from_name(cfg.kernel);
    if (!family) throw Error("config: unknown kernel '" + cfg.kernel + "'");
    if (!(cfg.eps > 0.0)) throw Error("config: shape parameter must be positive");
    const auto kind = test_function_from_name(cfg.testfn);
    if (!kind) throw Error("config: unknown test function '" + cfg.testfn + "'");
    const auto domain = Domain::from_name(cfg.domain);
    if (!domain) throw Error("config: unknown domain '" + cfg.domain + "'");
    return {Kernel{*family, cfg.eps}, *domain, test_function(*kind)};
}

} // namespace detail

/**
 * Full sweep driver: for each node budget, build the rule and the basis,
 * project the test function, and emit one row per requested truncation level
 * (or a single row at the projection order). A failed step is recorded in
 * the row's error column and the sweep keeps going. Rows come out in config
 * order; runtimes are reported only when cfg.timing is set, so default
 * output is byte-reproducible run to run.
 */
[[nodiscard]] inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    const detail::ResolvedConfig resolved = detail::resolve_config(cfg);
    const std::vector<Point> grid = uniform_grid(cfg.grid, resolved.domain);

    std::vector<ResultRow> rows;
    for (int budget : cfg.budgets) {
        using Clock = std::chrono::steady_clock;
        const auto budget_start = Clock::now();

        ResultRow base;
        base.eps = cfg.eps;
        base.kernel = cfg.kernel;
        base.domain = resolved.domain.name();
        base.testfn = cfg.testfn;

        WsvdBasis basis;
        Approximant full;
        Vector fgrid;
        Matrix cross;
        try {
            basis = build_basis(resolved.kernel, rule_for_budget(resolved.domain, cfg.rule, budget));
            const Index n = basis.size();
            std::vector<double> samples(static_cast<std::size_t>(n));
            for (Index i = 0; i < n; ++i) samples[static_cast<std::size_t>(i)] = resolved.testfn(basis.rule.nodes[static_cast<std::size_t>(i)]);
            full = project(basis, samples);

            base.n = n;
            const double mass = phi0(basis.kernel) * basis.rule.domain.measure();
            base.trace_residual = std::abs(basis.sigma2.sum() - mass) / mass;
            const Index na = basis.n_active;
            const Matrix a = kernel_matrix(basis.kernel, basis.rule.nodes);
            const Matrix gram = basis.c_matrix.leftCols(na).transpose() * a * basis.c_matrix.leftCols(na);
            base.gram_residual = (gram - Matrix::Identity(na, na)).cwiseAbs().maxCoeff();
            base.sigma_max = basis.sigma2[0];
            base.sigma_min = basis.sigma2[na - 1];

            fgrid.resize(static_cast<Index>(grid.size()));
            for (std::size_t i = 0; i < grid.size(); ++i) fgrid[static_cast<Index>(i)] = resolved.testfn(grid[i]);
            cross.resize(static_cast<Index>(grid.size()), n);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                cross.row(static_cast<Index>(i)) = kernel_column(basis.kernel, basis.rule.nodes, grid[i]).transpose();
            }
        } catch (const std::exception& e) {
            base.error = e.what();
            base.runtime_ms = 0.0;
            rows.push_back(base);
            continue;
        }

        std::vector<std::optional<Index>> variants;
        if (!cfg.m_list.empty()) {
            for (Index m : cfg.m_list) variants.emplace_back(m);
        } else {
            variants.emplace_back(std::nullopt);
        }

        bool first_variant = true;
        for (const auto& variant : variants) {
            ResultRow row = base;
            const auto row_start = first_variant ? budget_start : Clock::now();
            try {
                Approximant a = variant ? truncate(full, TruncateOrder{*variant})
                              : cfg.truncate_tol ? truncate(full, TruncateSigmaTol{*cfg.truncate_tol})
                                                 : full;
                row.m = a.m_active;
                const Vector vals = cross * translate_weights(a);
                const Vector diff = vals - fgrid;
                row.rmse = std::sqrt(diff.squaredNorm() / static_cast<double>(diff.size()));
                row.max_abs_err = diff.cwiseAbs().maxCoeff();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            if (cfg.timing) {
                row.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - row_start).count();
            }
            rows.push_back(std::move(row));
            first_variant = false;
        }
    }
    return rows;
}

namespace detail {

[[nodiscard]] inline std::string csv_field(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        if (c == ',' ) c = ';';
        if (c == '\n') c = ' ';
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline std::string format_csv(std::span<const ResultRow> rows) {
    std::string out = "n,m,eps,kernel,domain,testfn,rmse,max_abs_err,trace_residual,"
                      "gram_residual,sigma_min,sigma_max,runtime_ms,error\n";
    for (const ResultRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += detail::format_double(r.eps);
        out += ',';
        out += detail::csv_field(r.kernel);
        out += ',';
        out += detail::csv_field(r.domain);
        out += ',';
        out += detail::csv_field(r.testfn);
        out += ',';
        out += detail::format_double(r.rmse);
        out += ',';
        out += detail::format_double(r.max_abs_err);
        out += ',';
        out += detail::format_double(r.trace_residual);
        out += ',';
        out += detail::format_double(r.gram_residual);
        out += ',';
        out += detail::format_double(r.sigma_min);
        out += ',';
        out += detail::format_double(r.sigma_max);
        out += ',';
        out += detail::format_double(r.runtime_ms);
        out += ',';
        out += detail::csv_field(r.error);
        out += '\n';
    }
    return out;
}

[[nodiscard]] inline std::string format_spectrum_csv(const WsvdBasis& basis) {
    std::string out = "j,sigma2\n";
    for (Index j = 0; j < basis.size(); ++j) {
        out += std::to_string(j + 1);
        out += ',';
        out += detail::format_double(basis.sigma2[j]);
        out += '\n';
    }
    return out;
}

[[nodiscard]] inline std::string format_loo_csv(const LooResult& result) {
    std::string out = "eps,score\n";
    for (const auto& [eps, score] : result.scores) {
        out += detail::format_double(eps);
        out += ',';
        out += detail::format_double(score);
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("failed writing output file '" + path + "'");
}

} // namespace wsvd
