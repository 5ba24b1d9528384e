/**
 * @file objectives.hpp
 * @brief Segmentation-level functionals used to choose lambda.
 *
 * All functionals read the component structure from a LabelMap. Background
 * pixels (label 0) take no part in any statistic and do not count towards M.
 * Entropies are in nats with 0 ln 0 = 0; variances are population variances.
 */

#pragma once

#include "lambdaseg/connectivity.hpp"
#include "lambdaseg/image.hpp"

#include <cstdint>
#include <vector>

namespace lambdaseg {

struct HistogramBin {
    Intensity value = 0;
    std::uint64_t count = 0;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct ComponentStats {
    std::uint32_t id = 0;
    std::uint64_t size = 0;
    /// Populated bins only, ascending by value.
    std::vector<HistogramBin> histogram;
    double mean = 0.0;
    double variance = 0.0;
    double total_intensity = 0.0;
    double entropy = 0.0;
};

/// One entry per component, index i holding component i + 1.
std::vector<ComponentStats> component_stats(const ImageGrid& image, const LabelMap& labels);

/// Sum over components of their inner entropy.
double inner_entropy_total(const ImageGrid& image, const LabelMap& labels);

/**
 * Sum over components S_i of the entropy of the complement I - S_i, where I
 * is the set of non-background pixels. With `average`, divided by M.
 * A complement that is empty contributes 0.
 */
double outer_entropy_total(const ImageGrid& image, const LabelMap& labels, bool average);

/// a * inner + b * outer.
double combined_entropy(const ImageGrid& image, const LabelMap& labels, double a, double b,
                        bool average_outer);

/**
 * Sum of inner variances plus c * M, or with `average` the sum of inner
 * variances divided by M (no count penalty).
 */
double min_variance_objective(const ImageGrid& image, const LabelMap& labels, double c,
                              bool average);

/// Number of 4-adjacent pixel pairs carrying different labels, background included.
std::uint64_t boundary_length(const LabelMap& labels);

/// Real-valued raster with the same geometry as the source image.
struct FittedImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

/// Each component pixel replaced by its component mean; background passes through.
FittedImage fit_image(const ImageGrid& image, const LabelMap& labels);

struct MSWeights {
    double alpha_w = 1.0;
    double beta_w = 1.0;
    double gamma_w = 1.0;
    /// Component-count penalty of the inner-variance objective.
    double c = 1.0;
};

struct MSTerms {
    /// Within-component variance of the fitted raster (identically 0 for the mean fit).
    double fit_variance = 0.0;
    std::uint64_t boundary = 0;
    /// Sum of squared differences between fitted and original rasters.
    double fidelity = 0.0;
    double total = 0.0;
};

MSTerms ms_terms(const ImageGrid& image, const LabelMap& labels, const MSWeights& weights);

/// alpha_w * V + beta_w * L + gamma_w * D.
double ms_objective(const ImageGrid& image, const LabelMap& labels, const MSWeights& weights);

}  // namespace lambdaseg
