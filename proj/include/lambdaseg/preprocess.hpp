/**
 * @file preprocess.hpp
 * @brief Smoothing and global pre-cut applied before lambda segmentation.
 */

#pragma once

#include "lambdaseg/image.hpp"
#include "lambdaseg/thresholding.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace lambdaseg {

enum class Smoothing { None, Box3 };

enum class PrecutMethod { None, Kapur, Otsu, PeakFraction, PeakMode, Fixed };

struct PrecutSpec {
    PrecutMethod method = PrecutMethod::None;
    /// Used by PeakFraction and PeakMode; must lie in (0, 1].
    double fraction = 0.45;
    /// Used by Fixed; must lie in [0, maxval].
    int fixed_threshold = 0;
    Smoothing smoothing = Smoothing::None;
};

std::string_view to_string(Smoothing smoothing);
std::string_view to_string(PrecutMethod method);

/// Parses "none", "kapur", "otsu", "peak-fraction[:f]", "peak-mode[:f]" or "fixed:t".
/// Smoothing is left at its default.
PrecutSpec parse_precut(std::string_view text);
std::optional<Smoothing> parse_smoothing(std::string_view text);

/// 3x3 box mean with replicate padding, rounded to nearest.
ImageGrid box_smooth(const ImageGrid& image);

struct PrecutResult {
    ImageGrid image;
    BackgroundMask background;
    /// Clip level; absent for PrecutMethod::None.
    std::optional<int> threshold;
    std::size_t masked_count = 0;
    Smoothing smoothing = Smoothing::None;
    PrecutMethod method = PrecutMethod::None;
};

/**
 * Smooths (if requested), computes the clip level t on the smoothed image and
 * flags every pixel with value < t as background. Pixel values are untouched
 * by the masking step.
 */
PrecutResult apply_precut(const ImageGrid& image, const PrecutSpec& spec);

}  // namespace lambdaseg
