// Command-line runner for the cross-interface FEM/FDM experiments.
//
// Exit codes: 0 success, 2 usage error, 3 solver failure, 4 I/O error.

#include "crossif/error.hpp"
#include "crossif/experiment.hpp"
#include "crossif/fdm.hpp"
#include "crossif/fem.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct SolverOptions {
    std::string method = "direct";
    double tol = 1e-12;
    int max_iter = 10000;
    bool no_equilibrate = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--solver", method, "Linear solver: direct, cg or bicgstab")->capture_default_str();
        cmd->add_option("--tol", tol, "Backward-error bound (direct) or relative residual (iterative)")
            ->capture_default_str();
        cmd->add_option("--max-iter", max_iter, "Iteration cap for iterative solvers")->capture_default_str();
        cmd->add_flag("--no-equilibrate", no_equilibrate, "Skip row equilibration");
    }

    [[nodiscard]] crossif::SolverConfig config() const {
        crossif::SolverConfig cfg;
        cfg.method = crossif::parse_solver_method(method);
        cfg.rel_tol = tol;
        cfg.max_iter = max_iter;
        cfg.equilibrate = !no_equilibrate;
        cfg.validate();
        return cfg;
    }
};

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) {
        throw crossif::IoError("cannot open " + path + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw crossif::IoError("failed writing " + path);
    }
}

crossif::Method single_method(const std::string& name) {
    const auto methods = crossif::parse_methods(name);
    if (methods.size() != 1) {
        throw crossif::UsageError("this command needs --method fem or fdm");
    }
    return methods.front();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite element and finite difference solvers for elliptic cross-interface problems"};
    app.require_subcommand(1);

    SolverOptions solver_opts;
    std::string coeff_spec;
    std::string method_name;
    std::string out_path;
    int level = 0;

    auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and print a JSON summary");
    solve_cmd->add_option("--method", method_name, "fem or fdm")->required();
    solve_cmd->add_option("--coeff", coeff_spec, "preset:<id> or file:<path>")->required();
    solve_cmd->add_option("--level", level, "Refinement level k, N = 2^k")->required();
    solve_cmd->add_option("--out", out_path, "Write the nodal field as CSV");
    std::string matrix_path;
    solve_cmd->add_option("--export-matrix", matrix_path, "Write the assembled matrix in Matrix Market format");
    solver_opts.attach(solve_cmd);

    std::string levels_text;
    auto* table_cmd = app.add_subcommand("table", "Self-convergence table over a range of levels");
    table_cmd->add_option("--coeff", coeff_spec, "preset:<id> or file:<path>")->required();
    table_cmd->add_option("--method", method_name, "fem, fdm or both")->default_val("both");
    table_cmd->add_option("--levels", levels_text, "Level range k0..k1 (default: the preset's range)");
    table_cmd->add_option("--out", out_path, "CSV output path (default: stdout)");
    solver_opts.attach(table_cmd);

    double threshold = crossif::kDefaultDivergenceThreshold;
    auto* compare_cmd = app.add_subcommand("compare", "Compare FEM and FDM solutions at one level");
    compare_cmd->add_option("--coeff", coeff_spec, "preset:<id> or file:<path>")->required();
    compare_cmd->add_option("--level", level, "Refinement level k, N = 2^k")->required();
    compare_cmd->add_option("--threshold", threshold, "rel_inf above which solutions are flagged divergent")
        ->capture_default_str();
    compare_cmd->add_option("--out", out_path, "JSON output path (default: stdout)");
    solver_opts.attach(compare_cmd);

    std::string format_name = "csv";
    auto* dump_cmd = app.add_subcommand("dump-field", "Write a solution field as CSV or PGM");
    dump_cmd->add_option("--coeff", coeff_spec, "preset:<id> or file:<path>")->required();
    dump_cmd->add_option("--method", method_name, "fem or fdm")->required();
    dump_cmd->add_option("--level", level, "Refinement level k, N = 2^k")->required();
    dump_cmd->add_option("--format", format_name, "csv or pgm")->capture_default_str();
    dump_cmd->add_option("--out", out_path, "Output path")->required();
    solver_opts.attach(dump_cmd);

    auto* presets_cmd = app.add_subcommand("presets", "List the built-in experiment presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (presets_cmd->parsed()) {
            for (const auto& p : crossif::presets()) {
                std::cout << p.id << "\tm=" << p.coeff.partitions() << "\tlevels " << p.k_min << ".." << p.k_max << "\t"
                          << p.description << '\n';
            }
            return 0;
        }

        const auto source = crossif::resolve_coefficient(coeff_spec);
        const auto cfg = solver_opts.config();

        if (solve_cmd->parsed()) {
            const auto method = single_method(method_name);
            const auto solution = crossif::solve_level(source.field, method, level, cfg);
            if (!matrix_path.empty()) {
                const crossif::Problem problem{crossif::GridSpec(1 << level, source.field.partitions()), source.field,
                                               crossif::constant_source(1.0)};
                const auto system =
                    method == crossif::Method::Fem ? crossif::fem::assemble(problem) : crossif::fdm::assemble(problem);
                auto out = open_output(matrix_path);
                crossif::write_matrix_market(out, system.matrix);
                finish(out, matrix_path);
            }
            if (!out_path.empty()) {
                auto out = open_output(out_path);
                crossif::write_field(out, solution.field, crossif::FieldFormat::Csv);
                finish(out, out_path);
            }
            nlohmann::json summary;
            summary["method"] = crossif::to_string(method);
            summary["level"] = level;
            summary["N"] = 1 << level;
            summary["unknowns"] = solution.unknowns;
            summary["max_abs"] = solution.field.max_abs();
            summary["relative_residual"] = solution.relative_residual;
            summary["backward_error"] = solution.backward_error;
            summary["iterations"] = solution.iterations;
            std::cout << summary.dump(2) << '\n';
            return 0;
        }

        if (table_cmd->parsed()) {
            int k_min = 0;
            int k_max = 0;
            if (!levels_text.empty()) {
                std::tie(k_min, k_max) = crossif::parse_level_range(levels_text);
            } else if (source.preset) {
                k_min = source.preset->k_min;
                k_max = source.preset->k_max;
            } else {
                throw crossif::UsageError("--levels is required for file coefficients");
            }
            const auto tables = crossif::run_table(source.field, crossif::parse_methods(method_name), k_min, k_max, cfg);
            if (out_path.empty()) {
                crossif::write_table_csv(std::cout, tables);
            } else {
                auto out = open_output(out_path);
                crossif::write_table_csv(out, tables);
                finish(out, out_path);
                crossif::write_table_text(std::cout, tables);
            }
            return 0;
        }

        if (compare_cmd->parsed()) {
            const auto report = crossif::compare(source.field, level, threshold, cfg);
            const auto json = crossif::to_json(report);
            if (out_path.empty()) {
                std::cout << json;
            } else {
                auto out = open_output(out_path);
                out << json;
                finish(out, out_path);
                std::cout << "rel_inf " << report.rel_inf << " -> " << (report.similar ? "similar" : "divergent") << '\n';
            }
            return 0;
        }

        if (dump_cmd->parsed()) {
            const auto method = single_method(method_name);
            const auto format = crossif::parse_field_format(format_name);
            const auto solution = crossif::solve_level(source.field, method, level, cfg);
            auto out = open_output(out_path, std::ios::out | std::ios::binary);
            crossif::write_field(out, solution.field, format);
            finish(out, out_path);
            return 0;
        }
    } catch (const crossif::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const crossif::SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const crossif::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
