#include "lambdaseg/image.hpp"

#include "lambdaseg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lambdaseg {

ImageGrid::ImageGrid(int width, int height, int maxval, std::vector<Intensity> pixels)
    : width_(width), height_(height), maxval_(maxval), pixels_(std::move(pixels)) {
    if (width <= 0 || height <= 0) {
        throw InvalidArgumentError("ImageGrid: dimensions must be positive");
    }
    if (maxval <= 0 || maxval > 65535) {
        throw UnsupportedError("ImageGrid: maxval must be in [1, 65535], got " +
                               std::to_string(maxval));
    }
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidArgumentError("ImageGrid: pixel count does not match width x height");
    }
    for (Intensity v : pixels_) {
        if (v > maxval) {
            throw InvalidArgumentError("ImageGrid: pixel value " + std::to_string(v) +
                                       " exceeds maxval " + std::to_string(maxval));
        }
    }
}

ImageGrid ImageGrid::filled(int width, int height, int maxval, Intensity value) {
    std::vector<Intensity> px(static_cast<std::size_t>(std::max(width, 0)) *
                                  static_cast<std::size_t>(std::max(height, 0)),
                              value);
    return ImageGrid(width, height, maxval, std::move(px));
}

Intensity ImageGrid::at(Coord c) const {
    if (!contains(c)) {
        throw BoundsError("pixel (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                          ") outside " + std::to_string(width_) + "x" + std::to_string(height_) +
                          " image");
    }
    return pixels_[index(c)];
}

Intensity ImageGrid::max_value() const {
    return pixels_.empty() ? Intensity{0} : *std::max_element(pixels_.begin(), pixels_.end());
}

Intensity ImageGrid::min_value() const {
    return pixels_.empty() ? Intensity{0} : *std::min_element(pixels_.begin(), pixels_.end());
}

Histogram histogram(const ImageGrid& image, const BackgroundMask* background) {
    if (background == nullptr) {
        return histogram_if(image, [](std::size_t) { return true; });
    }
    if (background->size() != image.size()) {
        throw InvalidArgumentError("histogram: mask size does not match image");
    }
    return histogram_if(image, [&](std::size_t i) { return (*background)[i] == 0; });
}

double entropy(const Histogram& hist) {
    if (hist.total == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(hist.total);
    double h = 0.0;
    for (std::uint64_t c : hist.counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log(p);
        }
    }
    return h;
}

}  // namespace lambdaseg
