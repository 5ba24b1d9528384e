/**
 * @file export.hpp
 * @brief CSV / JSON / PGM serializations of labels, statistics and sweep curves.
 *
 * Reals are written in shortest round-trip form so equal inputs give
 * byte-identical files.
 */

#pragma once

#include "lambdaseg/connectivity.hpp"
#include "lambdaseg/objectives.hpp"
#include "lambdaseg/sweep.hpp"
#include "lambdaseg/thresholding.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace lambdaseg {

std::string format_real(double value);

/// Labels as a 16-bit graymap (maxval 65535). Throws if M exceeds 65535.
ImageGrid label_image(const LabelMap& labels);

/// "x,y,label" rows in raster order.
std::string labels_csv(const LabelMap& labels);

/// "id,size,mean,variance,total_intensity,entropy".
std::string stats_csv(std::span<const ComponentStats> stats);

/// "lambda,objective,components".
std::string sweep_csv(const SweepReport& report);

/// "t,criterion".
std::string threshold_curve_csv(const ThresholdResult& result);

/// Selected lambda, kind, direction, grid bounds and the objective parameters.
nlohmann::ordered_json sweep_summary(const SweepReport& report, const ObjectiveParams& params);

/// 64-bit FNV-1a of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace lambdaseg
