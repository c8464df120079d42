#include "crossif/coeff.hpp"
#include "crossif/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace crossif {
namespace {

TEST(Checkerboard, TwoByTwoHighContrastLayout) {
    const auto a = CoefficientField::checkerboard(2, 1e3, 1e-3);
    EXPECT_EQ(a.at(0, 0), 1e3);  // bottom-left
    EXPECT_EQ(a.at(1, 0), 1e-3); // top-left
    EXPECT_EQ(a.at(0, 1), 1e-3); // bottom-right
    EXPECT_EQ(a.at(1, 1), 1e3);  // top-right
}

TEST(Checkerboard, FirstColumnAlternatesFromBottom) {
    const auto a = CoefficientField::checkerboard(4, 10.0, 1.0);
    EXPECT_EQ(a.at(0, 0), 10.0);
    EXPECT_EQ(a.at(1, 0), 1.0);
    EXPECT_EQ(a.at(2, 0), 10.0);
    EXPECT_EQ(a.at(3, 0), 1.0);
}

TEST(Checkerboard, EqualValuesGiveUniformField) {
    for (int m : {2, 3, 5, 8}) {
        const auto a = CoefficientField::checkerboard(m, 2.5, 2.5);
        EXPECT_EQ(a, CoefficientField::uniform(m, 2.5));
        for (double v : a.values()) {
            EXPECT_EQ(v, 2.5);
        }
    }
}

TEST(Checkerboard, RejectsNonPositiveValues) {
    EXPECT_THROW(CoefficientField::checkerboard(2, 0.0, 1.0), UsageError);
    EXPECT_THROW(CoefficientField::checkerboard(2, 1.0, -1.0), UsageError);
    EXPECT_THROW(CoefficientField::checkerboard(1, 1.0, 1.0), UsageError);
}

TEST(Checkerboard, HalfTurnSymmetry) {
    for (int m : {2, 3, 4, 7, 16}) {
        const auto a = CoefficientField::checkerboard(m, 1e3, 1e-3);
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) {
                EXPECT_EQ(a.at(r, c), a.at(m - 1 - r, m - 1 - c));
            }
        }
    }
}

TEST(FromMatrix, IrregularLayoutKeepsBottomToTopOrder) {
    const auto a = CoefficientField::from_matrix({
        {100.0, 0.5, 10.0, 1.0},
        {0.4, 1000.0, 0.35, 10.0},
        {5.0, 0.45, 0.5, 1.0},
        {150.0, 100.0, 1.0, 10.0},
    });
    EXPECT_EQ(a.partitions(), 4);
    EXPECT_EQ(a.at(0, 0), 100.0);
    EXPECT_EQ(a.at(1, 1), 1000.0);
    EXPECT_EQ(a.at(3, 0), 150.0);
    EXPECT_EQ(a.sample(0.1, 0.9), 150.0);
    EXPECT_EQ(a.sample(0.6, 0.3), 0.35);
}

TEST(FromMatrix, RejectsBadShapesAndValues) {
    EXPECT_THROW(CoefficientField::from_matrix({{1.0}}), UsageError);
    EXPECT_THROW(CoefficientField::from_matrix({{1.0, 1.0}, {1.0}}), UsageError);
    EXPECT_THROW(CoefficientField::from_matrix({{1.0, 0.0}, {1.0, 1.0}}), UsageError);
    EXPECT_EQ(CoefficientField::from_matrix({{1.0, 1.0}, {1.0, 1.0}}), CoefficientField::uniform(2, 1.0));
}

TEST(Sample, ProbesEitherSideOfInterface) {
    const auto a = CoefficientField::checkerboard(2, 1e3, 1e-3);
    const double h = 1.0 / 16;
    EXPECT_EQ(a.sample(0.25 - h, 0.1), 1e3);
    EXPECT_EQ(a.sample(0.25 + h, 0.1), 1e3);
    EXPECT_EQ(a.sample(0.5 + h, 0.1), 1e-3);
    EXPECT_EQ(a.sample(0.5 - h, 0.1), 1e3);

    // m = 4: the first vertical interface sits at x = 1/4.
    const auto b = CoefficientField::checkerboard(4, 1e3, 1e-3);
    EXPECT_EQ(b.sample(0.25 - h, 0.1), 1e3);
    EXPECT_EQ(b.sample(0.25 + h, 0.1), 1e-3);
}

TEST(Sample, RejectsPointsOnCellEdges) {
    const auto a = CoefficientField::checkerboard(4, 1.0, 2.0);
    EXPECT_THROW((void)a.sample(0.25, 0.1), UsageError);
    EXPECT_THROW((void)a.sample(0.1, 0.5), UsageError);
    EXPECT_THROW((void)a.sample(0.0, 0.1), UsageError);
    EXPECT_THROW((void)a.sample(0.3, 1.0), UsageError);
}

TEST(Sample, ConstantOverEachCell) {
    const auto a = CoefficientField::checkerboard(4, 7.0, 0.3);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const double x0 = c / 4.0;
            const double y0 = r / 4.0;
            EXPECT_EQ(a.sample(x0 + 0.01, y0 + 0.01), a.sample(x0 + 0.24, y0 + 0.13));
            EXPECT_EQ(a.sample(x0 + 0.125, y0 + 0.125), a.at(r, c));
        }
    }
}

TEST(AtNode, MatchesFloatingSampleAndRejectsLineNodes) {
    const GridSpec grid(16, 4);
    const auto a = CoefficientField::checkerboard(4, 3.0, 5.0);
    EXPECT_EQ(a.at_node(grid, 3, 5), a.sample(3.0 / 16, 5.0 / 16));
    EXPECT_THROW((void)a.at_node(grid, 4, 5), UsageError);
    EXPECT_THROW((void)a.at_node(grid, 0, 5), UsageError);
    EXPECT_THROW((void)a.at_node(GridSpec(16, 8), 3, 5), UsageError);
}

TEST(Transform, TransposeAndScale) {
    const auto a = CoefficientField::from_matrix({{1.0, 2.0}, {3.0, 4.0}});
    const auto t = a.transposed();
    EXPECT_EQ(t.at(0, 1), 3.0);
    EXPECT_EQ(t.at(1, 0), 2.0);
    EXPECT_EQ(t.transposed(), a);
    EXPECT_EQ(a.scaled(2.0).at(1, 1), 8.0);
    EXPECT_THROW((void)a.scaled(0.0), UsageError);
}

TEST(CoefficientJson, ParsesAndRoundTrips) {
    const auto a = parse_coefficient_json(R"({"m": 2, "rows_bottom_to_top": [[1000, 0.001], [0.001, 1000]]})");
    EXPECT_EQ(a, CoefficientField::checkerboard(2, 1e3, 1e-3));
    const auto b = CoefficientField::from_matrix({{100.0, 0.5, 10.0}, {0.4, 1000.0, 0.35}, {5.0, 0.45, 0.5}});
    EXPECT_EQ(parse_coefficient_json(to_coefficient_json(b)), b);
}

TEST(CoefficientJson, RejectsInconsistentDocuments) {
    EXPECT_THROW(parse_coefficient_json(R"({"m": 3, "rows_bottom_to_top": [[1, 1], [1, 1]]})"), UsageError);
    EXPECT_THROW(parse_coefficient_json(R"({"m": 2, "rows_bottom_to_top": [[1, 1], [1, -1]]})"), UsageError);
    EXPECT_THROW(parse_coefficient_json(R"({"m": 2, "rows_bottom_to_top": [[1, 1], [1, "x"]]})"), UsageError);
    EXPECT_THROW(parse_coefficient_json(R"({"rows_bottom_to_top": [[1, 1], [1, 1]]})"), UsageError);
    EXPECT_THROW(parse_coefficient_json("{not json"), IoError);
}

TEST(CoefficientJson, LoadsFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "crossif_coeff_test.json";
    {
        std::ofstream out(path);
        out << R"({"m": 2, "rows_bottom_to_top": [[1, 2], [3, 4]]})";
    }
    const auto a = load_coefficient_file(path);
    EXPECT_EQ(a.at(1, 0), 3.0);
    std::filesystem::remove(path);
    EXPECT_THROW(load_coefficient_file(path), IoError);
}

} // namespace
} // namespace crossif
