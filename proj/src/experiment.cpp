#include "crossif/experiment.hpp"

#include "crossif/error.hpp"
#include "crossif/fdm.hpp"
#include "crossif/fem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace crossif {

namespace {

std::string format_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<ExperimentPreset> make_presets() {
    std::vector<ExperimentPreset> out;
    out.push_back({"ex1", "m=2 checkerboard, a=1e3 / 1e-3", CoefficientField::checkerboard(2, 1e3, 1e-3), 2, 7});
    out.push_back({"ex2", "m=4 checkerboard, a=10 / 1", CoefficientField::checkerboard(4, 10.0, 1.0), 3, 7});
    out.push_back({"ex3new", "m=8 checkerboard, a=10 / 1", CoefficientField::checkerboard(8, 10.0, 1.0), 4, 8});
    out.push_back({"ex3", "m=4 checkerboard, a=1e3 / 1e-3", CoefficientField::checkerboard(4, 1e3, 1e-3), 3, 7});
    out.push_back({"ex4", "m=8 checkerboard, a=1e3 / 1e-3", CoefficientField::checkerboard(8, 1e3, 1e-3), 4, 8});
    out.push_back({"ex5", "m=16 checkerboard, a=1e3 / 1e-3", CoefficientField::checkerboard(16, 1e3, 1e-3), 5, 9});
    out.push_back({"ex7", "m=4 irregular field",
                   CoefficientField::from_matrix({
                       {100.0, 0.5, 10.0, 1.0},
                       {0.4, 1000.0, 0.35, 10.0},
                       {5.0, 0.45, 0.5, 1.0},
                       {150.0, 100.0, 1.0, 10.0},
                   }),
                   3, 7});
    return out;
}

nlohmann::json table_json(const MethodTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json row;
        row["h"] = r.h;
        row["e2"] = r.e2;
        row["einf"] = r.einf;
        row["order2"] = r.order2 ? nlohmann::json(*r.order2) : nlohmann::json(nullptr);
        row["orderinf"] = r.orderinf ? nlohmann::json(*r.orderinf) : nlohmann::json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

const char* to_string(Method m) noexcept { return m == Method::Fem ? "fem" : "fdm"; }

std::vector<Method> parse_methods(const std::string& name) {
    if (name == "fem") {
        return {Method::Fem};
    }
    if (name == "fdm") {
        return {Method::Fdm};
    }
    if (name == "both") {
        return {Method::Fem, Method::Fdm};
    }
    throw UsageError("unknown method '" + name + "' (expected fem, fdm or both)");
}

const std::vector<ExperimentPreset>& presets() {
    static const std::vector<ExperimentPreset> all = make_presets();
    return all;
}

const ExperimentPreset& find_preset(const std::string& id) {
    for (const auto& p : presets()) {
        if (p.id == id) {
            return p;
        }
    }
    throw UsageError("unknown preset '" + id + "' (expected ex1, ex2, ex3new, ex3, ex4, ex5 or ex7)");
}

CoefficientSource resolve_coefficient(const std::string& source) {
    constexpr std::string_view kPreset = "preset:";
    constexpr std::string_view kFile = "file:";
    if (source.starts_with(kPreset)) {
        const auto& p = find_preset(source.substr(kPreset.size()));
        return {p.coeff, p};
    }
    if (source.starts_with(kFile)) {
        return {load_coefficient_file(source.substr(kFile.size())), std::nullopt};
    }
    throw UsageError("coefficient must be preset:<id> or file:<path>, got '" + source + "'");
}

std::pair<int, int> parse_level_range(const std::string& text) {
    const auto dots = text.find("..");
    int lo = 0;
    int hi = 0;
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            throw UsageError("");
        }
        lo = std::stoi(text.substr(0, dots), &used);
        if (used != dots) {
            throw UsageError("");
        }
        const auto tail = text.substr(dots + 2);
        hi = std::stoi(tail, &used);
        if (used != tail.size()) {
            throw UsageError("");
        }
    } catch (const std::exception&) {
        throw UsageError("level range must look like k0..k1, got '" + text + "'");
    }
    if (lo < 1 || hi <= lo || hi > 14) {
        throw UsageError("level range " + text + " must satisfy 1 <= k0 < k1 <= 14");
    }
    return {lo, hi};
}

DiscreteSolution solve_level(const CoefficientField& coeff, Method method, int level, const SolverConfig& solver) {
    if (level < 1 || level > 14) {
        throw UsageError("level must lie in 1..14, got " + std::to_string(level));
    }
    const Problem problem{GridSpec(1 << level, coeff.partitions()), coeff, constant_source(1.0)};
    try {
        return method == Method::Fem ? fem::solve(problem, solver) : fdm::solve(problem, solver);
    } catch (const SolverError& e) {
        throw SolverError(std::string(to_string(method)) + " at h=1/2^" + std::to_string(level) + ": " + e.what(),
                          e.residual());
    }
}

std::vector<MethodTable> run_table(const CoefficientField& coeff, const std::vector<Method>& methods, int k_min,
                                   int k_max, const SolverConfig& solver) {
    if (k_max <= k_min) {
        throw UsageError("run_table: need at least two levels");
    }
    std::vector<MethodTable> out;
    for (const auto method : methods) {
        std::vector<ScalarField> solutions;
        for (int k = k_min; k <= k_max; ++k) {
            solutions.push_back(solve_level(coeff, method, k, solver).field);
        }
        out.push_back({method, convergence_table(solutions)});
    }
    return out;
}

void write_table_csv(std::ostream& out, const std::vector<MethodTable>& tables) {
    out << "h,e2,order2,einf,orderinf,method\n";
    for (const auto& t : tables) {
        for (const auto& r : t.rows) {
            out << format_sci(r.h) << ',' << format_sci(r.e2) << ',' << (r.order2 ? format_sci(*r.order2) : "") << ','
                << format_sci(r.einf) << ',' << (r.orderinf ? format_sci(*r.orderinf) : "") << ','
                << to_string(t.method) << '\n';
        }
    }
}

void write_table_text(std::ostream& out, const std::vector<MethodTable>& tables) {
    char buf[160];
    for (const auto& t : tables) {
        out << to_string(t.method) << '\n';
        std::snprintf(buf, sizeof buf, "  %-9s %-12s %-6s %-12s %-6s\n", "h", "l2", "order", "linf", "order");
        out << buf;
        for (const auto& r : t.rows) {
            const auto n = static_cast<long>(std::lround(1.0 / r.h));
            std::snprintf(buf, sizeof buf, "  1/%-7ld %-12.4E %-6s %-12.4E %-6s\n", n, r.e2,
                          r.order2 ? format_fixed(round_order(*r.order2), 2).c_str() : "", r.einf,
                          r.orderinf ? format_fixed(round_order(*r.orderinf), 2).c_str() : "");
            out << buf;
        }
    }
}

CompareReport compare(const CoefficientField& coeff, int level, double threshold, const SolverConfig& solver) {
    if (!(threshold > 0.0)) {
        throw UsageError("compare: threshold must be positive");
    }
    CompareReport report;
    report.level = level;
    report.threshold = threshold;

    std::vector<ScalarField> fem_fields;
    std::vector<ScalarField> fdm_fields;
    for (int k = level; k <= level + 1; ++k) {
        fem_fields.push_back(solve_level(coeff, Method::Fem, k, solver).field);
        fdm_fields.push_back(solve_level(coeff, Method::Fdm, k, solver).field);
    }
    const auto diff = cross_difference(fem_fields.front(), fdm_fields.front());
    report.rel_inf = diff.rel_inf;
    report.max_abs_difference = diff.difference.max_abs();
    report.max_abs_fem = fem_fields.front().max_abs();
    report.similar = report.rel_inf <= threshold;
    report.tables.push_back({Method::Fem, convergence_table(fem_fields)});
    report.tables.push_back({Method::Fdm, convergence_table(fdm_fields)});
    return report;
}

std::string to_json(const CompareReport& report) {
    nlohmann::json doc;
    doc["level"] = report.level;
    doc["N"] = 1 << report.level;
    doc["rel_inf"] = report.rel_inf;
    doc["max_abs_difference"] = report.max_abs_difference;
    doc["max_abs_fem"] = report.max_abs_fem;
    doc["threshold"] = report.threshold;
    doc["verdict"] = report.similar ? "similar" : "divergent";
    nlohmann::json tables;
    for (const auto& t : report.tables) {
        tables[to_string(t.method)] = table_json(t);
    }
    doc["self_error"] = std::move(tables);
    return doc.dump(2) + "\n";
}

FieldFormat parse_field_format(const std::string& name) {
    if (name == "csv") {
        return FieldFormat::Csv;
    }
    if (name == "pgm") {
        return FieldFormat::Pgm;
    }
    throw UsageError("unknown field format '" + name + "' (expected csv or pgm)");
}

void write_field(std::ostream& out, const ScalarField& field, FieldFormat format) {
    const int n = field.intervals();
    if (format == FieldFormat::Csv) {
        char buf[128];
        out << "i,j,x,y,value,masked\n";
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n; ++i) {
                const double x = static_cast<double>(i) / n;
                const double y = static_cast<double>(j) / n;
                if (field.valid(i, j)) {
                    std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%.17g,0\n", i, j, x, y, field.value(i, j));
                } else {
                    std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,,1\n", i, j, x, y);
                }
                out << buf;
            }
        }
        return;
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (field.valid(i, j)) {
                lo = std::min(lo, field.value(i, j));
                hi = std::max(hi, field.value(i, j));
            }
        }
    }
    const double span = hi > lo ? hi - lo : 1.0;
    out << "P5\n" << (n + 1) << ' ' << (n + 1) << "\n255\n";
    for (int j = n; j >= 0; --j) {
        for (int i = 0; i <= n; ++i) {
            unsigned char px = 0;
            if (field.valid(i, j)) {
                px = static_cast<unsigned char>(std::lround(255.0 * (field.value(i, j) - lo) / span));
            }
            out.put(static_cast<char>(px));
        }
    }
}

} // namespace crossif
