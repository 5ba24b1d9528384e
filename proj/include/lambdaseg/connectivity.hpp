/**
 * @file connectivity.hpp
 * @brief Fuzzy lambda-connectedness on the pixel adjacency graph.
 *
 * Adjacent pixels x, y get a neighbor connectivity alpha(x, y) = mu(I(x), I(y))
 * with mu(u, v) = 1 - |u - v| / R. A path is scored by the minimum (or the
 * product) of alpha along its steps, and the degree of connectedness C(x, y)
 * is the best score over all paths. Pixels are lambda-connected when
 * C(x, y) >= lambda.
 */

#pragma once

#include "lambdaseg/image.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lambdaseg {

enum class Adjacency { Four, Eight };

/// How neighbor connectivities combine along a path.
enum class Composition { Min, Product };

struct ConnectivityConfig {
    Adjacency adjacency = Adjacency::Four;
    Composition composition = Composition::Min;
    /// Normalization range R of the linear similarity; unset means the image maxval.
    std::optional<double> range;

    /// R resolved against `image`. Throws InvalidArgumentError unless R > 0.
    double effective_range(const ImageGrid& image) const;
};

/// Component labelling of a raster. Label 0 is background; components are 1..component_count.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> labels;
    std::uint32_t component_count = 0;

    std::size_t size() const { return labels.size(); }
    std::uint32_t at(Coord c) const {
        return labels[static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(c.x)];
    }

    friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

/// Linear-range similarity 1 - |u - v| / range, clamped to [0, 1].
double mu(double u, double v, double range);

bool adjacent(Coord a, Coord b, Adjacency adjacency);

/// Neighbor connectivity; 0 for non-adjacent pairs (including x == y).
double alpha(Coord x, Coord y, const ImageGrid& image, const ConnectivityConfig& config);

/// Path connectivity. A single-pixel path scores 1.
double beta(std::span<const Coord> path, const ImageGrid& image, const ConnectivityConfig& config);

/// Best path connectivity between x and y; C(x, x) = 1.
double connectedness_degree(Coord x, Coord y, const ImageGrid& image,
                            const ConnectivityConfig& config);

/// All C(source, y) at once, row-major. Pixels flagged in `background` are not traversed.
std::vector<double> connectedness_from(Coord source, const ImageGrid& image,
                                       const ConnectivityConfig& config,
                                       const BackgroundMask* background = nullptr);

/**
 * Lambda-connected components: pixels share a label iff a path joins them
 * whose every step has alpha >= lambda. Components are numbered in order of
 * first raster-scan encounter; background pixels get label 0.
 *
 * Only min composition is supported here; under product composition
 * co-lambda-connectedness is not transitive. Throws UnsupportedError otherwise.
 */
LabelMap segment(const ImageGrid& image, double lambda, const ConnectivityConfig& config = {},
                 const BackgroundMask* background = nullptr);

/// Visits the in-bounds neighbours of pixel `index` under `adjacency`.
template <class Fn>
void for_each_neighbor(int width, int height, std::size_t index, Adjacency adjacency, Fn&& fn) {
    const int x = static_cast<int>(index % static_cast<std::size_t>(width));
    const int y = static_cast<int>(index / static_cast<std::size_t>(width));
    static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int n = adjacency == Adjacency::Four ? 4 : 8;
    for (int k = 0; k < n; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (nx >= 0 && ny >= 0 && nx < width && ny < height) {
            fn(static_cast<std::size_t>(ny) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(nx));
        }
    }
}

}  // namespace lambdaseg
