/**
 * @file thresholding.hpp
 * @brief Global histogram thresholds: Kapur maximum entropy, Otsu, peak fraction.
 *
 * Foreground is the class of values <= t, background the values > t. Only
 * thresholds leaving both classes non-empty are evaluated, and the smallest
 * t wins ties.
 */

#pragma once

#include "lambdaseg/image.hpp"

#include <utility>
#include <vector>

namespace lambdaseg {

struct ThresholdResult {
    int threshold = 0;
    double criterion_value = 0.0;
    /// (t, criterion) for every valid t, ascending.
    std::vector<std::pair<int, double>> curve;
};

/// Maximizes H_F(t) + H_B(t), each entropy normalized within its class.
ThresholdResult kapur_threshold(const Histogram& hist);

/// Maximizes the between-class variance.
ThresholdResult otsu_threshold(const Histogram& hist);

/// What the fraction of a peak-fraction clip level is taken of.
enum class PeakMode {
    Maximum,       ///< brightest pixel of the frame
    HistogramMode  ///< most frequent intensity (smallest on ties)
};

/// round(fraction * peak).
int peak_fraction_threshold(const ImageGrid& image, double fraction,
                            PeakMode mode = PeakMode::Maximum);

}  // namespace lambdaseg
