#pragma once

#include "crossif/analysis.hpp"
#include "crossif/coeff.hpp"
#include "crossif/problem.hpp"
#include "crossif/sparse.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crossif {

enum class Method { Fem, Fdm };

const char* to_string(Method m) noexcept;
/// "fem", "fdm" or "both".
std::vector<Method> parse_methods(const std::string& name);

/// One of the reference experiments: f = 1, a checkerboard or explicit
/// coefficient, and the range of levels k (h = 2^-k) solved for its table.
struct ExperimentPreset {
    std::string id;
    std::string description;
    CoefficientField coeff;
    int k_min;
    int k_max;
};

/// Presets ex1, ex2, ex3new, ex3, ex4, ex5, ex7.
const std::vector<ExperimentPreset>& presets();
const ExperimentPreset& find_preset(const std::string& id);

struct CoefficientSource {
    CoefficientField field;
    std::optional<ExperimentPreset> preset;
};

/// Resolves `preset:<id>` or `file:<path>`.
CoefficientSource resolve_coefficient(const std::string& source);

/// Parses "k0..k1".
std::pair<int, int> parse_level_range(const std::string& text);

/// Solves -div(a grad u) = 1 on the grid with N = 2^level. Solver failures
/// are rethrown with method and h in the message.
DiscreteSolution solve_level(const CoefficientField& coeff, Method method, int level, const SolverConfig& solver);

struct MethodTable {
    Method method;
    std::vector<ConvergenceRow> rows;
};

/// Solves every level k_min..k_max once per method and tabulates the self
/// errors of consecutive pairs (k_max - k_min rows per method).
std::vector<MethodTable> run_table(const CoefficientField& coeff, const std::vector<Method>& methods, int k_min,
                                   int k_max, const SolverConfig& solver);

/// CSV with header `h,e2,order2,einf,orderinf,method`; first-row orders empty.
void write_table_csv(std::ostream& out, const std::vector<MethodTable>& tables);
/// Aligned text table with orders rounded to two decimals.
void write_table_text(std::ostream& out, const std::vector<MethodTable>& tables);

/// Default rel_inf cut between "similar" and "divergent".
inline constexpr double kDefaultDivergenceThreshold = 0.5;

struct CompareReport {
    int level = 0;
    double rel_inf = 0.0;
    double max_abs_difference = 0.0;
    double max_abs_fem = 0.0;
    double threshold = kDefaultDivergenceThreshold;
    /// rel_inf <= threshold; a heuristic label, not a convergence statement.
    bool similar = true;
    std::vector<MethodTable> tables;
};

/// Solves both methods at `level` (and `level + 1` for the self errors) and
/// measures their pointwise disagreement.
CompareReport compare(const CoefficientField& coeff, int level, double threshold, const SolverConfig& solver);
std::string to_json(const CompareReport& report);

enum class FieldFormat { Csv, Pgm };
FieldFormat parse_field_format(const std::string& name);

/// CSV rows `i,j,x,y,value,masked` (value blank when masked) or an 8-bit
/// binary PGM, min-max normalized over valid nodes, top row y = 1, masked
/// nodes written as 0.
void write_field(std::ostream& out, const ScalarField& field, FieldFormat format);

} // namespace crossif
