#include "lambdaseg/objectives.hpp"

#include "lambdaseg/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lambdaseg {

namespace {

void check_geometry(const ImageGrid& image, const LabelMap& labels) {
    if (labels.width != image.width() || labels.height != image.height() ||
        labels.labels.size() != image.size()) {
        throw InvalidArgumentError("label map dimensions do not match image");
    }
}

/// Pixel values grouped by component: values[offsets[i] .. offsets[i+1]) belong to
/// component i + 1, sorted ascending.
struct Grouped {
    std::vector<std::size_t> offsets;
    std::vector<Intensity> values;
};

Grouped group_by_component(const ImageGrid& image, const LabelMap& labels) {
    check_geometry(image, labels);
    const std::size_t m = labels.component_count;
    Grouped g;
    g.offsets.assign(m + 2, 0);
    for (std::uint32_t l : labels.labels) {
        if (l > m) {
            throw InvalidArgumentError("label map holds a label above component_count");
        }
        if (l != 0) {
            ++g.offsets[l + 1];
        }
    }
    for (std::size_t i = 1; i < g.offsets.size(); ++i) {
        g.offsets[i] += g.offsets[i - 1];
    }
    g.values.resize(g.offsets[m + 1]);
    std::vector<std::size_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    const auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const std::uint32_t l = labels.labels[i];
        if (l != 0) {
            g.values[cursor[l]++] = px[i];
        }
    }
    // Offsets were built with a one-slot shift; drop the leading zero for label 0.
    g.offsets.erase(g.offsets.begin());
    for (std::size_t i = 0; i < m; ++i) {
        std::sort(g.values.begin() + static_cast<std::ptrdiff_t>(g.offsets[i]),
                  g.values.begin() + static_cast<std::ptrdiff_t>(g.offsets[i + 1]));
    }
    return g;
}

double entropy_of_bins(const std::vector<HistogramBin>& bins, std::uint64_t n) {
    const double dn = static_cast<double>(n);
    double h = 0.0;
    for (const auto& b : bins) {
        const double p = static_cast<double>(b.count) / dn;
        h -= p * std::log(p);
    }
    return h;
}

double xlogx(std::uint64_t c) {
    return c == 0 ? 0.0 : static_cast<double>(c) * std::log(static_cast<double>(c));
}

}  // namespace

std::vector<ComponentStats> component_stats(const ImageGrid& image, const LabelMap& labels) {
    const Grouped g = group_by_component(image, labels);
    std::vector<ComponentStats> out(labels.component_count);
    for (std::size_t i = 0; i < out.size(); ++i) {
        ComponentStats& s = out[i];
        s.id = static_cast<std::uint32_t>(i + 1);
        const auto first = g.values.begin() + static_cast<std::ptrdiff_t>(g.offsets[i]);
        const auto last = g.values.begin() + static_cast<std::ptrdiff_t>(g.offsets[i + 1]);
        s.size = static_cast<std::uint64_t>(last - first);
        for (auto it = first; it != last; ++it) {
            if (s.histogram.empty() || s.histogram.back().value != *it) {
                s.histogram.push_back({*it, 0});
            }
            ++s.histogram.back().count;
            s.total_intensity += static_cast<double>(*it);
        }
        if (s.size == 0) {
            continue;
        }
        const double n = static_cast<double>(s.size);
        s.mean = s.total_intensity / n;
        double ss = 0.0;
        for (const auto& b : s.histogram) {
            const double d = static_cast<double>(b.value) - s.mean;
            ss += static_cast<double>(b.count) * d * d;
        }
        s.variance = ss / n;
        s.entropy = entropy_of_bins(s.histogram, s.size);
    }
    return out;
}

double inner_entropy_total(const ImageGrid& image, const LabelMap& labels) {
    double total = 0.0;
    for (const auto& s : component_stats(image, labels)) {
        total += s.entropy;
    }
    return total;
}

double outer_entropy_total(const ImageGrid& image, const LabelMap& labels, bool average) {
    const auto stats = component_stats(image, labels);
    if (stats.empty()) {
        return 0.0;
    }
    std::vector<std::uint64_t> global(static_cast<std::size_t>(image.maxval()) + 1, 0);
    std::uint64_t n_total = 0;
    for (const auto& s : stats) {
        for (const auto& b : s.histogram) {
            global[b.value] += b.count;
        }
        n_total += s.size;
    }
    double global_xlogx = 0.0;
    for (std::uint64_t c : global) {
        global_xlogx += xlogx(c);
    }

    // H(complement) = ln n_c - (1/n_c) sum_k c_k ln c_k, where only the bins
    // touched by the component differ from the global histogram.
    double total = 0.0;
    for (const auto& s : stats) {
        const std::uint64_t n_c = n_total - s.size;
        if (n_c == 0) {
            continue;
        }
        double sum = global_xlogx;
        for (const auto& b : s.histogram) {
            sum += xlogx(global[b.value] - b.count) - xlogx(global[b.value]);
        }
        const double dn = static_cast<double>(n_c);
        const double h = std::log(dn) - sum / dn;
        total += std::max(h, 0.0);
    }
    return average ? total / static_cast<double>(stats.size()) : total;
}

double combined_entropy(const ImageGrid& image, const LabelMap& labels, double a, double b,
                        bool average_outer) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidArgumentError("combined_entropy: weights must be finite");
    }
    double value = a * inner_entropy_total(image, labels);
    if (b != 0.0) {
        value += b * outer_entropy_total(image, labels, average_outer);
    }
    return value;
}

double min_variance_objective(const ImageGrid& image, const LabelMap& labels, double c,
                              bool average) {
    const auto stats = component_stats(image, labels);
    double sum = 0.0;
    for (const auto& s : stats) {
        sum += s.variance;
    }
    const double m = static_cast<double>(stats.size());
    if (average) {
        return stats.empty() ? 0.0 : sum / m;
    }
    return sum + c * m;
}

std::uint64_t boundary_length(const LabelMap& labels) {
    std::uint64_t count = 0;
    const auto w = static_cast<std::size_t>(labels.width);
    const auto h = static_cast<std::size_t>(labels.height);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const std::uint32_t l = labels.labels[y * w + x];
            if (x + 1 < w && labels.labels[y * w + x + 1] != l) {
                ++count;
            }
            if (y + 1 < h && labels.labels[(y + 1) * w + x] != l) {
                ++count;
            }
        }
    }
    return count;
}

FittedImage fit_image(const ImageGrid& image, const LabelMap& labels) {
    const auto stats = component_stats(image, labels);
    FittedImage fit;
    fit.width = image.width();
    fit.height = image.height();
    fit.values.resize(image.size());
    const auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const std::uint32_t l = labels.labels[i];
        fit.values[i] = l == 0 ? static_cast<double>(px[i]) : stats[l - 1].mean;
    }
    return fit;
}

MSTerms ms_terms(const ImageGrid& image, const LabelMap& labels, const MSWeights& weights) {
    for (double w : {weights.alpha_w, weights.beta_w, weights.gamma_w, weights.c}) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InvalidArgumentError("ms_objective: weights must be finite and non-negative");
        }
    }
    const FittedImage fit = fit_image(image, labels);
    const std::size_t m = labels.component_count;

    // Within-component variance of the fitted values, shifted by each
    // component's first fitted value so a constant fit yields exactly 0.
    std::vector<double> shift(m + 1, 0.0);
    std::vector<double> sum(m + 1, 0.0);
    std::vector<double> sum_sq(m + 1, 0.0);
    std::vector<std::uint64_t> n(m + 1, 0);
    std::vector<std::uint8_t> seen(m + 1, 0);
    MSTerms t;
    const auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const std::uint32_t l = labels.labels[i];
        if (l == 0) {
            continue;
        }
        if (seen[l] == 0) {
            seen[l] = 1;
            shift[l] = fit.values[i];
        }
        const double d = fit.values[i] - shift[l];
        sum[l] += d;
        sum_sq[l] += d * d;
        ++n[l];
        const double r = fit.values[i] - static_cast<double>(px[i]);
        t.fidelity += r * r;
    }
    for (std::size_t l = 1; l <= m; ++l) {
        if (n[l] == 0) {
            continue;
        }
        const double dn = static_cast<double>(n[l]);
        const double mean = sum[l] / dn;
        t.fit_variance += std::max(sum_sq[l] / dn - mean * mean, 0.0);
    }
    t.boundary = boundary_length(labels);
    t.total = weights.alpha_w * t.fit_variance +
              weights.beta_w * static_cast<double>(t.boundary) + weights.gamma_w * t.fidelity;
    return t;
}

double ms_objective(const ImageGrid& image, const LabelMap& labels, const MSWeights& weights) {
    return ms_terms(image, labels, weights).total;
}

}  // namespace lambdaseg
