#include "lambdaseg/connectivity.hpp"

#include "lambdaseg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>
#include <utility>

namespace lambdaseg {

double ConnectivityConfig::effective_range(const ImageGrid& image) const {
    const double r = range.value_or(static_cast<double>(image.maxval()));
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw InvalidArgumentError("connectivity: range R must be positive and finite");
    }
    return r;
}

double mu(double u, double v, double range) {
    const double m = 1.0 - std::abs(u - v) / range;
    return std::clamp(m, 0.0, 1.0);
}

bool adjacent(Coord a, Coord b, Adjacency adjacency) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    if (dx == 0 && dy == 0) {
        return false;
    }
    return adjacency == Adjacency::Four ? dx + dy == 1 : std::max(dx, dy) == 1;
}

namespace {

void check_in_bounds(const ImageGrid& image, Coord c) {
    if (!image.contains(c)) {
        throw BoundsError("pixel (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                          ") outside " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " image");
    }
}

double combine(double path_score, double step, Composition composition) {
    return composition == Composition::Min ? std::min(path_score, step) : path_score * step;
}

}  // namespace

double alpha(Coord x, Coord y, const ImageGrid& image, const ConnectivityConfig& config) {
    check_in_bounds(image, x);
    check_in_bounds(image, y);
    if (!adjacent(x, y, config.adjacency)) {
        return 0.0;
    }
    return mu(image[image.index(x)], image[image.index(y)], config.effective_range(image));
}

double beta(std::span<const Coord> path, const ImageGrid& image, const ConnectivityConfig& config) {
    if (path.empty()) {
        throw InvalidPathError("beta: path must contain at least one pixel");
    }
    for (Coord c : path) {
        check_in_bounds(image, c);
    }
    double score = 1.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!adjacent(path[i], path[i + 1], config.adjacency)) {
            throw InvalidPathError("beta: path steps " + std::to_string(i) + " and " +
                                   std::to_string(i + 1) + " are not adjacent");
        }
        score = combine(score, alpha(path[i], path[i + 1], image, config), config.composition);
    }
    return score;
}

std::vector<double> connectedness_from(Coord source, const ImageGrid& image,
                                       const ConnectivityConfig& config,
                                       const BackgroundMask* background) {
    check_in_bounds(image, source);
    if (background != nullptr && background->size() != image.size()) {
        throw InvalidArgumentError("connectedness: mask size does not match image");
    }
    const double range = config.effective_range(image);
    const auto px = image.pixels();

    // Best-first search: both compositions are monotone non-increasing along a
    // path, so the first time a pixel is settled its score is final.
    std::vector<double> best(image.size(), 0.0);
    std::vector<std::uint8_t> settled(image.size(), 0);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> frontier;
    const std::size_t s = image.index(source);
    best[s] = 1.0;
    frontier.emplace(1.0, s);
    while (!frontier.empty()) {
        auto [score, u] = frontier.top();
        frontier.pop();
        if (settled[u] != 0) {
            continue;
        }
        settled[u] = 1;
        for_each_neighbor(image.width(), image.height(), u, config.adjacency, [&](std::size_t v) {
            if (settled[v] != 0 || (background != nullptr && (*background)[v] != 0)) {
                return;
            }
            const double cand = combine(score, mu(px[u], px[v], range), config.composition);
            if (cand > best[v]) {
                best[v] = cand;
                frontier.emplace(cand, v);
            }
        });
    }
    return best;
}

double connectedness_degree(Coord x, Coord y, const ImageGrid& image,
                            const ConnectivityConfig& config) {
    check_in_bounds(image, x);
    check_in_bounds(image, y);
    if (x == y) {
        return 1.0;
    }
    // Products are order-sensitive in the last bit; always search from the
    // lower raster index so C(x, y) and C(y, x) are bit-identical.
    if (image.index(y) < image.index(x)) {
        std::swap(x, y);
    }
    return connectedness_from(x, image, config)[image.index(y)];
}

LabelMap segment(const ImageGrid& image, double lambda, const ConnectivityConfig& config,
                 const BackgroundMask* background) {
    if (config.composition != Composition::Min) {
        throw UnsupportedError("segment: only min composition defines an equivalence relation");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw InvalidArgumentError("segment: lambda must lie in [0, 1]");
    }
    if (background != nullptr && background->size() != image.size()) {
        throw InvalidArgumentError("segment: mask size does not match image");
    }
    const double range = config.effective_range(image);
    const auto px = image.pixels();
    const int w = image.width();
    const int h = image.height();

    LabelMap out;
    out.width = w;
    out.height = h;
    out.labels.assign(image.size(), 0);

    auto excluded = [&](std::size_t i) { return background != nullptr && (*background)[i] != 0; };

    std::vector<std::size_t> queue;
    queue.reserve(image.size());
    std::uint32_t next = 0;
    for (std::size_t seed = 0; seed < image.size(); ++seed) {
        if (out.labels[seed] != 0 || excluded(seed)) {
            continue;
        }
        const std::uint32_t id = ++next;
        out.labels[seed] = id;
        queue.clear();
        queue.push_back(seed);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t u = queue[head];
            for_each_neighbor(w, h, u, config.adjacency, [&](std::size_t v) {
                if (out.labels[v] != 0 || excluded(v)) {
                    return;
                }
                if (mu(px[u], px[v], range) >= lambda) {
                    out.labels[v] = id;
                    queue.push_back(v);
                }
            });
        }
    }
    out.component_count = next;
    return out;
}

}  // namespace lambdaseg
