#include "lambdaseg/analysis.hpp"

#include "lambdaseg/errors.hpp"

#include <string>
#include <tuple>

namespace lambdaseg {

std::string_view to_string(SelectionCriterion criterion) {
    switch (criterion) {
        case SelectionCriterion::Largest: return "largest";
        case SelectionCriterion::Brightest: return "brightest";
        case SelectionCriterion::LargestThenBrightest: return "largest-then-brightest";
    }
    return "unknown";
}

std::optional<SelectionCriterion> parse_selection(std::string_view text) {
    if (text == "largest") return SelectionCriterion::Largest;
    if (text == "brightest") return SelectionCriterion::Brightest;
    if (text == "largest-then-brightest") return SelectionCriterion::LargestThenBrightest;
    return std::nullopt;
}

namespace {

template <class Key>
std::uint32_t argmax_component(std::span<const ComponentStats> stats, Key key) {
    if (stats.empty()) {
        throw EmptySelectionError("component selection: segmentation has no components");
    }
    const ComponentStats* best = &stats.front();
    for (const auto& s : stats) {
        if (key(s) > key(*best)) {
            best = &s;
        }
    }
    return best->id;
}

}  // namespace

std::uint32_t largest_component(std::span<const ComponentStats> stats) {
    return argmax_component(stats, [](const ComponentStats& s) { return s.size; });
}

std::uint32_t brightest_component(std::span<const ComponentStats> stats) {
    return argmax_component(stats, [](const ComponentStats& s) { return s.total_intensity; });
}

std::uint32_t largest_then_brightest_component(std::span<const ComponentStats> stats) {
    return argmax_component(
        stats, [](const ComponentStats& s) { return std::tuple(s.size, s.total_intensity); });
}

std::uint32_t select_component(std::span<const ComponentStats> stats,
                               SelectionCriterion criterion) {
    switch (criterion) {
        case SelectionCriterion::Largest: return largest_component(stats);
        case SelectionCriterion::Brightest: return brightest_component(stats);
        case SelectionCriterion::LargestThenBrightest:
            return largest_then_brightest_component(stats);
    }
    throw InvalidArgumentError("unknown selection criterion");
}

ImageGrid extract_component(const LabelMap& labels, std::uint32_t id, const ImageGrid& image) {
    if (labels.width != image.width() || labels.height != image.height()) {
        throw InvalidArgumentError("extract_component: label map dimensions do not match image");
    }
    if (id == 0 || id > labels.component_count) {
        throw InvalidArgumentError("extract_component: no component " + std::to_string(id) +
                                   " (have " + std::to_string(labels.component_count) + ")");
    }
    std::vector<Intensity> px(image.pixels().begin(), image.pixels().end());
    for (std::size_t i = 0; i < px.size(); ++i) {
        if (labels.labels[i] != id) {
            px[i] = 0;
        }
    }
    return ImageGrid(image.width(), image.height(), image.maxval(), std::move(px));
}

}  // namespace lambdaseg
