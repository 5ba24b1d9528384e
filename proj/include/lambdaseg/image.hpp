/**
 * @file image.hpp
 * @brief Grayscale raster, pixel coordinates and intensity histograms.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lambdaseg {

using Intensity = std::uint16_t;

struct Coord {
    int x = 0;
    int y = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
};

/// Per-pixel exclusion flags, row-major; nonzero marks a background pixel.
using BackgroundMask = std::vector<std::uint8_t>;

/**
 * Rectangular single-channel raster with intensities in [0, maxval].
 *
 * Row-major with a top-left origin, matching the PGM raster order.
 * Immutable once constructed.
 */
class ImageGrid {
public:
    ImageGrid() = default;
    ImageGrid(int width, int height, int maxval, std::vector<Intensity> pixels);

    /// Constant image.
    static ImageGrid filled(int width, int height, int maxval, Intensity value);

    int width() const { return width_; }
    int height() const { return height_; }
    int maxval() const { return maxval_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    std::span<const Intensity> pixels() const { return pixels_; }

    bool contains(Coord c) const {
        return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
    }
    std::size_t index(Coord c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x);
    }
    Coord coord(std::size_t index) const {
        return {static_cast<int>(index % static_cast<std::size_t>(width_)),
                static_cast<int>(index / static_cast<std::size_t>(width_))};
    }

    Intensity operator[](std::size_t index) const { return pixels_[index]; }
    Intensity at(Coord c) const;

    Intensity max_value() const;
    Intensity min_value() const;

    friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    int maxval_ = 0;
    std::vector<Intensity> pixels_;
};

/// Dense intensity histogram, bins 0..maxval.
struct Histogram {
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    int maxval() const { return static_cast<int>(counts.size()) - 1; }

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Histogram of the pixels not flagged in `background` (all pixels when null).
/// Throws EmptySelectionError when nothing is selected.
Histogram histogram(const ImageGrid& image, const BackgroundMask* background = nullptr);

/// Histogram of the pixels whose row-major index satisfies `keep`.
template <class Predicate>
Histogram histogram_if(const ImageGrid& image, Predicate keep);

/// Shannon entropy (nats) of a histogram, 0 ln 0 taken as 0.
double entropy(const Histogram& hist);

}  // namespace lambdaseg

#include "lambdaseg/detail/histogram_if.hpp"
