/**
 * @file sweep.hpp
 * @brief Grid search over lambda for a chosen segmentation objective.
 */

#pragma once

#include "lambdaseg/connectivity.hpp"
#include "lambdaseg/objectives.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lambdaseg {

enum class ObjectiveKind {
    MaxEntropy,          ///< inner entropy total, maximized
    MaxEntropyCombined,  ///< a * inner + b * outer, maximized
    MinVariance,         ///< inner variances + c * M, minimized
    MinVarianceAvg,      ///< inner variances / M, minimized
    MumfordShah,         ///< alpha * V + beta * L + gamma * D, minimized
};

enum class Direction { Maximize, Minimize };

std::string_view to_string(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_objective_kind(std::string_view name);
Direction direction_of(ObjectiveKind kind);

struct ObjectiveParams {
    double a = 1.0;
    double b = 0.0;
    bool average_outer = false;
    MSWeights weights;
};

/// Evaluates one objective on a fixed segmentation.
double evaluate_objective(ObjectiveKind kind, const ObjectiveParams& params,
                          const ImageGrid& image, const LabelMap& labels);

struct SweepReport {
    std::vector<double> grid;
    std::vector<double> objective_values;
    std::vector<std::uint32_t> component_counts;
    double selected_lambda = 0.0;
    std::size_t selected_index = 0;
    ObjectiveKind objective_kind = ObjectiveKind::MaxEntropy;
    Direction direction = Direction::Maximize;
};

/// {k / 100 : k = 0..100}.
std::vector<double> default_lambda_grid();

/**
 * Inclusive grid start, start + step, ..., end. Values are rounded to 1e-9
 * so that decimal steps land on the nearest double of the decimal value.
 */
std::vector<double> make_lambda_grid(double start, double end, double step);

/// Parses "start:end:step".
std::vector<double> parse_lambda_grid(std::string_view spec);

/// Index of the optimum of `values`, first index on ties.
std::size_t select_optimum(const std::vector<double>& values, Direction direction);

/**
 * Segments at every grid value and evaluates the objective. The grid must be
 * non-empty, inside [0, 1] and strictly increasing. `threads` == 0 picks the
 * hardware concurrency; results are merged in grid order regardless.
 */
SweepReport sweep_select(const ImageGrid& image, const ConnectivityConfig& config,
                         ObjectiveKind kind, const ObjectiveParams& params,
                         const std::vector<double>& grid,
                         const BackgroundMask* background = nullptr, unsigned threads = 1);

/// Reads LAMBDASEG_THREADS (0 or unset means automatic).
unsigned threads_from_environment();

}  // namespace lambdaseg
