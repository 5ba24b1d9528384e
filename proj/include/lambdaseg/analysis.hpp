/**
 * @file analysis.hpp
 * @brief Picking the outlier component out of a segmentation.
 */

#pragma once

#include "lambdaseg/connectivity.hpp"
#include "lambdaseg/objectives.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace lambdaseg {

enum class SelectionCriterion {
    Largest,              ///< most pixels
    Brightest,            ///< highest total intensity
    LargestThenBrightest  ///< size first, total intensity breaks ties
};

std::string_view to_string(SelectionCriterion criterion);
std::optional<SelectionCriterion> parse_selection(std::string_view text);

// Each returns a component id; ties go to the smallest id. Empty input throws.
std::uint32_t largest_component(std::span<const ComponentStats> stats);
std::uint32_t brightest_component(std::span<const ComponentStats> stats);
std::uint32_t largest_then_brightest_component(std::span<const ComponentStats> stats);
std::uint32_t select_component(std::span<const ComponentStats> stats, SelectionCriterion criterion);

/// Copy of `image` with every pixel outside component `id` set to 0.
ImageGrid extract_component(const LabelMap& labels, std::uint32_t id, const ImageGrid& image);

}  // namespace lambdaseg
