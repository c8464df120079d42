#include "crossif/coeff.hpp"

#include "crossif/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace crossif {

namespace {

void require_positive(double v, const char* where) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << where << ": coefficient values must be finite and > 0, got " << v;
        throw UsageError(os.str());
    }
}

bool is_integral(double v) {
    return std::abs(v - std::round(v)) <= 1e-12 * std::max(1.0, std::abs(v));
}

} // namespace

CoefficientField::CoefficientField(int m, std::vector<double> values) : m_(m), values_(std::move(values)) {}

CoefficientField CoefficientField::from_matrix(const std::vector<std::vector<double>>& rows) {
    const auto m = static_cast<int>(rows.size());
    if (m < 2) {
        throw UsageError("coefficient: need an m x m array with m >= 2, got m=" + std::to_string(m));
    }
    std::vector<double> values;
    values.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw UsageError("coefficient: array is not square (row of length " + std::to_string(row.size()) +
                             ", expected " + std::to_string(m) + ")");
        }
        for (double v : row) {
            require_positive(v, "coefficient");
            values.push_back(v);
        }
    }
    return {m, std::move(values)};
}

CoefficientField CoefficientField::checkerboard(int m, double a_even, double a_odd) {
    if (m < 2) {
        throw UsageError("checkerboard: m must be >= 2, got " + std::to_string(m));
    }
    require_positive(a_even, "checkerboard");
    require_positive(a_odd, "checkerboard");
    std::vector<double> values(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            values[static_cast<std::size_t>(r * m + c)] = ((r + c) % 2 == 0) ? a_even : a_odd;
        }
    }
    return {m, std::move(values)};
}

double CoefficientField::at(int row, int col) const {
    if (row < 0 || col < 0 || row >= m_ || col >= m_) {
        throw UsageError("coefficient: cell (" + std::to_string(row) + "," + std::to_string(col) + ") out of range");
    }
    return values_[static_cast<std::size_t>(row * m_ + col)];
}

double CoefficientField::sample(double x, double y) const {
    const double xm = x * m_;
    const double ym = y * m_;
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) || is_integral(xm) || is_integral(ym)) {
        std::ostringstream os;
        os << "coefficient: sample point (" << x << "," << y << ") is not strictly inside a cell";
        throw UsageError(os.str());
    }
    return at(static_cast<int>(std::floor(ym)), static_cast<int>(std::floor(xm)));
}

double CoefficientField::at_node(const GridSpec& grid, int i, int j) const {
    if (grid.partitions() != m_) {
        throw UsageError("coefficient: field has m=" + std::to_string(m_) + " but grid has m=" +
                         std::to_string(grid.partitions()));
    }
    const int n = grid.intervals();
    if (i <= 0 || j <= 0 || i >= n || j >= n || grid.on_partition_line(i) || grid.on_partition_line(j)) {
        throw UsageError("coefficient: node (" + std::to_string(i) + "," + std::to_string(j) +
                         ") lies on an interface line or the boundary");
    }
    return at(grid.partition_of_interval(j), grid.partition_of_interval(i));
}

CoefficientField CoefficientField::scaled(double factor) const {
    require_positive(factor, "coefficient scaling");
    auto values = values_;
    for (auto& v : values) {
        v *= factor;
    }
    return {m_, std::move(values)};
}

CoefficientField CoefficientField::transposed() const {
    std::vector<double> values(values_.size());
    for (int r = 0; r < m_; ++r) {
        for (int c = 0; c < m_; ++c) {
            values[static_cast<std::size_t>(c * m_ + r)] = values_[static_cast<std::size_t>(r * m_ + c)];
        }
    }
    return {m_, std::move(values)};
}

CoefficientField parse_coefficient_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("coefficient file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("rows_bottom_to_top")) {
        throw UsageError("coefficient file: expected object with keys \"m\" and \"rows_bottom_to_top\"");
    }
    if (!doc["m"].is_number_integer()) {
        throw UsageError("coefficient file: \"m\" must be an integer");
    }
    const auto m = doc["m"].get<int>();
    const auto& rows_json = doc["rows_bottom_to_top"];
    if (!rows_json.is_array() || rows_json.size() != static_cast<std::size_t>(std::max(m, 0))) {
        throw UsageError("coefficient file: \"rows_bottom_to_top\" must hold exactly m=" + std::to_string(m) + " rows");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : rows_json) {
        if (!row.is_array()) {
            throw UsageError("coefficient file: every row must be an array");
        }
        std::vector<double> values;
        for (const auto& v : row) {
            if (!v.is_number()) {
                throw UsageError("coefficient file: non-numeric entry");
            }
            values.push_back(v.get<double>());
        }
        rows.push_back(std::move(values));
    }
    return CoefficientField::from_matrix(rows);
}

CoefficientField load_coefficient_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open coefficient file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_coefficient_json(buffer.str());
}

std::string to_coefficient_json(const CoefficientField& field) {
    const int m = field.partitions();
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m; ++c) {
            row.push_back(field.at(r, c));
        }
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["m"] = m;
    doc["rows_bottom_to_top"] = std::move(rows);
    return doc.dump();
}

} // namespace crossif
