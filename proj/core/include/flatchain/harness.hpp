#pragma once

#include "flatchain/chain.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/varifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatchain {

/// One member of a chain sequence together with its reference object.
struct Scenario {
    std::string name;
    int m = 0;
    Chain chain;
    /// Reference chain; absent means the zero chain (and the zero varifold).
    std::optional<Chain> reference;
    /// Flat column is fn(chain - reference) when set, fn(chain) otherwise.
    bool flat_against_reference = false;
    std::string description;
};

/// Z_2 boundary of m alternating sectors of the ring 1 <= |z| <= 1 + 1/m^2,
/// meshed with ceil(arc_resolution * pi / m) segments per sector arc. The
/// reference is the inner polygonal circle.
Scenario scenario_annulus(int m, int arc_resolution = 64);

/// Z_2 boundary of [m, m+1] x [0, 1/m] meshed with `cells` x 1 squares split
/// into triangles, in absolute coordinates. The reference is zero.
Scenario scenario_escaping_rectangle(int m, int cells = 4);

enum class Shape { Circle, Square };

/// Circle: the regular 2^m-gon over Z inside a complex of lens-shaped fans
/// between it and the reference 2^reference_level-gon. Square: the unit square
/// boundary subdivided m times against the same square subdivided
/// reference_level times.
Scenario scenario_polygonal_limit(Shape shape, int m, int reference_level = 10);

struct RunConfig {
    std::string scenario = "annulus";  // annulus | escaping_rectangle | polygonal_circle | polygonal_square
    int m_first = 2;
    int m_last = 10;
    int depth = 6;
    std::string dictionary = "default";
    int arc_resolution = 64;
    int reference_level = 10;
    int rectangle_cells = 4;
};

struct ReportRow {
    int m = 0;
    double flat = 0.0;
    double mass = 0.0;
    double measure_distance = 0.0;
    double var_distance = 0.0;
    SolverReport solver;
    std::string annotation;
};

struct AssertionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ConvergenceReport {
    RunConfig config;
    std::string dictionary;
    std::vector<ReportRow> rows;
    std::vector<AssertionResult> assertions;

    bool passed() const;
};

Scenario make_scenario(const RunConfig& config, int m);
ReportRow evaluate(const Scenario& s, int depth, const TestDictionary& dict);
ConvergenceReport run(const RunConfig& config);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

std::string to_csv(const ConvergenceReport& report);
std::string to_svg(const ConvergenceReport& report);

}  // namespace flatchain
