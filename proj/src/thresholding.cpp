#include "lambdaseg/thresholding.hpp"

#include "lambdaseg/errors.hpp"

#include <cmath>

namespace lambdaseg {

namespace {

/// First and last populated bins; throws unless at least two bins are populated.
std::pair<int, int> populated_span(const Histogram& hist, const char* who) {
    int lo = -1;
    int hi = -1;
    for (int k = 0; k < static_cast<int>(hist.counts.size()); ++k) {
        if (hist.counts[static_cast<std::size_t>(k)] > 0) {
            if (lo < 0) {
                lo = k;
            }
            hi = k;
        }
    }
    if (lo < 0 || lo == hi) {
        throw DegenerateHistogramError(std::string(who) +
                                       ": histogram needs at least two distinct values");
    }
    return {lo, hi};
}

ThresholdResult pick_max(std::vector<std::pair<int, double>> curve) {
    ThresholdResult r;
    r.threshold = curve.front().first;
    r.criterion_value = curve.front().second;
    for (const auto& [t, v] : curve) {
        if (v > r.criterion_value) {
            r.threshold = t;
            r.criterion_value = v;
        }
    }
    r.curve = std::move(curve);
    return r;
}

}  // namespace

ThresholdResult kapur_threshold(const Histogram& hist) {
    const auto [lo, hi] = populated_span(hist, "kapur");

    // With P = class mass and S = sum of c ln c over the class,
    // H = -sum (c/P) ln(c/P) = ln P - S / P.
    double total_mass = 0.0;
    double total_xlogx = 0.0;
    for (std::uint64_t c : hist.counts) {
        if (c > 0) {
            const double dc = static_cast<double>(c);
            total_mass += dc;
            total_xlogx += dc * std::log(dc);
        }
    }

    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(hi - lo));
    double fg_mass = 0.0;
    double fg_xlogx = 0.0;
    for (int t = 0; t < hi; ++t) {
        const std::uint64_t c = hist.counts[static_cast<std::size_t>(t)];
        if (c > 0) {
            const double dc = static_cast<double>(c);
            fg_mass += dc;
            fg_xlogx += dc * std::log(dc);
        }
        if (t < lo) {
            continue;
        }
        const double bg_mass = total_mass - fg_mass;
        const double bg_xlogx = total_xlogx - fg_xlogx;
        const double h_f = std::log(fg_mass) - fg_xlogx / fg_mass;
        const double h_b = std::log(bg_mass) - bg_xlogx / bg_mass;
        curve.emplace_back(t, h_f + h_b);
    }
    return pick_max(std::move(curve));
}

ThresholdResult otsu_threshold(const Histogram& hist) {
    const auto [lo, hi] = populated_span(hist, "otsu");

    double total_mass = 0.0;
    double total_moment = 0.0;
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        total_mass += static_cast<double>(hist.counts[k]);
        total_moment += static_cast<double>(k) * static_cast<double>(hist.counts[k]);
    }

    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(hi - lo));
    double fg_mass = 0.0;
    double fg_moment = 0.0;
    for (int t = 0; t < hi; ++t) {
        const double c = static_cast<double>(hist.counts[static_cast<std::size_t>(t)]);
        fg_mass += c;
        fg_moment += static_cast<double>(t) * c;
        if (t < lo) {
            continue;
        }
        const double bg_mass = total_mass - fg_mass;
        const double w0 = fg_mass / total_mass;
        const double w1 = bg_mass / total_mass;
        const double mean_diff = fg_moment / fg_mass - (total_moment - fg_moment) / bg_mass;
        curve.emplace_back(t, w0 * w1 * mean_diff * mean_diff);
    }
    return pick_max(std::move(curve));
}

int peak_fraction_threshold(const ImageGrid& image, double fraction, PeakMode mode) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw InvalidArgumentError("peak_fraction: fraction must lie in (0, 1]");
    }
    if (image.empty()) {
        throw EmptySelectionError("peak_fraction: empty image");
    }
    double peak = 0.0;
    if (mode == PeakMode::Maximum) {
        peak = image.max_value();
    } else {
        const Histogram hist = histogram(image);
        std::size_t best = 0;
        for (std::size_t k = 1; k < hist.counts.size(); ++k) {
            if (hist.counts[k] > hist.counts[best]) {
                best = k;
            }
        }
        peak = static_cast<double>(best);
    }
    return static_cast<int>(std::lround(fraction * peak));
}

}  // namespace lambdaseg
