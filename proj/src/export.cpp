#include "lambdaseg/export.hpp"

#include "lambdaseg/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace lambdaseg {

std::string format_real(double value) {
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw Error("format_real: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

ImageGrid label_image(const LabelMap& labels) {
    if (labels.component_count > 65535) {
        throw UnsupportedError("label map has " + std::to_string(labels.component_count) +
                               " components; a 16-bit label image holds at most 65535");
    }
    std::vector<Intensity> px(labels.labels.begin(), labels.labels.end());
    return ImageGrid(labels.width, labels.height, 65535, std::move(px));
}

std::string labels_csv(const LabelMap& labels) {
    std::string out = "x,y,label\n";
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            out += std::to_string(x);
            out += ',';
            out += std::to_string(y);
            out += ',';
            out += std::to_string(labels.at({x, y}));
            out += '\n';
        }
    }
    return out;
}

std::string stats_csv(std::span<const ComponentStats> stats) {
    std::string out = "id,size,mean,variance,total_intensity,entropy\n";
    for (const auto& s : stats) {
        out += std::to_string(s.id) + ',' + std::to_string(s.size) + ',' + format_real(s.mean) +
               ',' + format_real(s.variance) + ',' + format_real(s.total_intensity) + ',' +
               format_real(s.entropy) + '\n';
    }
    return out;
}

std::string sweep_csv(const SweepReport& report) {
    std::string out = "lambda,objective,components\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        out += format_real(report.grid[i]) + ',' + format_real(report.objective_values[i]) + ',' +
               std::to_string(report.component_counts[i]) + '\n';
    }
    return out;
}

std::string threshold_curve_csv(const ThresholdResult& result) {
    std::string out = "t,criterion\n";
    for (const auto& [t, v] : result.curve) {
        out += std::to_string(t) + ',' + format_real(v) + '\n';
    }
    return out;
}

nlohmann::ordered_json sweep_summary(const SweepReport& report, const ObjectiveParams& params) {
    nlohmann::ordered_json j;
    j["objective"] = std::string(to_string(report.objective_kind));
    j["direction"] = report.direction == Direction::Maximize ? "maximize" : "minimize";
    j["selected_lambda"] = report.selected_lambda;
    j["selected_objective"] = report.objective_values[report.selected_index];
    j["selected_components"] = report.component_counts[report.selected_index];
    j["grid"] = {{"start", report.grid.front()},
                 {"end", report.grid.back()},
                 {"points", report.grid.size()}};

    nlohmann::ordered_json p;
    switch (report.objective_kind) {
        case ObjectiveKind::MaxEntropy:
            break;
        case ObjectiveKind::MaxEntropyCombined:
            p["a"] = params.a;
            p["b"] = params.b;
            p["average_outer"] = params.average_outer;
            break;
        case ObjectiveKind::MinVariance:
            p["c"] = params.weights.c;
            break;
        case ObjectiveKind::MinVarianceAvg:
            break;
        case ObjectiveKind::MumfordShah:
            p["alpha"] = params.weights.alpha_w;
            p["beta"] = params.weights.beta_w;
            p["gamma"] = params.weights.gamma_w;
            p["fit"] = "component-mean";
            // The mean fit leaves no within-component variation, so V never contributes.
            p["active_terms"] = {"L", "D"};
            break;
    }
    j["params"] = p.is_null() ? nlohmann::ordered_json::object() : p;
    return j;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

}  // namespace lambdaseg
