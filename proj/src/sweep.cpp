#include "lambdaseg/sweep.hpp"

#include "lambdaseg/errors.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace lambdaseg {

namespace {

struct KindName {
    ObjectiveKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ObjectiveKind::MaxEntropy, "max-entropy"},
    {ObjectiveKind::MaxEntropyCombined, "max-entropy-combined"},
    {ObjectiveKind::MinVariance, "min-variance"},
    {ObjectiveKind::MinVarianceAvg, "min-variance-avg"},
    {ObjectiveKind::MumfordShah, "mumford-shah"},
};

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw InvalidArgumentError("grid: cannot parse " + std::string(what) + " '" +
                                   std::string(text) + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) {
            return kn.name;
        }
    }
    return "unknown";
}

std::optional<ObjectiveKind> parse_objective_kind(std::string_view name) {
    for (const auto& kn : kKindNames) {
        if (kn.name == name) {
            return kn.kind;
        }
    }
    return std::nullopt;
}

Direction direction_of(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::MaxEntropy:
        case ObjectiveKind::MaxEntropyCombined:
            return Direction::Maximize;
        case ObjectiveKind::MinVariance:
        case ObjectiveKind::MinVarianceAvg:
        case ObjectiveKind::MumfordShah:
            return Direction::Minimize;
    }
    return Direction::Minimize;
}

double evaluate_objective(ObjectiveKind kind, const ObjectiveParams& params,
                          const ImageGrid& image, const LabelMap& labels) {
    switch (kind) {
        case ObjectiveKind::MaxEntropy:
            return inner_entropy_total(image, labels);
        case ObjectiveKind::MaxEntropyCombined:
            return combined_entropy(image, labels, params.a, params.b, params.average_outer);
        case ObjectiveKind::MinVariance:
            return min_variance_objective(image, labels, params.weights.c, false);
        case ObjectiveKind::MinVarianceAvg:
            return min_variance_objective(image, labels, params.weights.c, true);
        case ObjectiveKind::MumfordShah:
            return ms_objective(image, labels, params.weights);
    }
    throw InvalidArgumentError("unknown objective kind");
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(101);
    for (int k = 0; k <= 100; ++k) {
        grid.push_back(k / 100.0);
    }
    return grid;
}

std::vector<double> make_lambda_grid(double start, double end, double step) {
    if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step)) {
        throw InvalidArgumentError("grid: bounds and step must be finite");
    }
    if (start < 0.0 || end > 1.0 || start > end) {
        throw InvalidArgumentError("grid: need 0 <= start <= end <= 1");
    }
    if (!(step > 0.0)) {
        throw InvalidArgumentError("grid: step must be positive");
    }
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double v = std::round((start + static_cast<double>(i) * step) * 1e9) / 1e9;
        grid.push_back(std::min(v, 1.0));
    }
    return grid;
}

std::vector<double> parse_lambda_grid(std::string_view spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
        spec.find(':', c2 + 1) != std::string_view::npos) {
        throw InvalidArgumentError("grid: expected start:end:step, got '" + std::string(spec) + "'");
    }
    return make_lambda_grid(parse_double(spec.substr(0, c1), "start"),
                            parse_double(spec.substr(c1 + 1, c2 - c1 - 1), "end"),
                            parse_double(spec.substr(c2 + 1), "step"));
}

std::size_t select_optimum(const std::vector<double>& values, Direction direction) {
    if (values.empty()) {
        throw InvalidArgumentError("select_optimum: no values");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const bool better = direction == Direction::Maximize ? values[i] > values[best]
                                                             : values[i] < values[best];
        if (better) {
            best = i;
        }
    }
    return best;
}

SweepReport sweep_select(const ImageGrid& image, const ConnectivityConfig& config,
                         ObjectiveKind kind, const ObjectiveParams& params,
                         const std::vector<double>& grid, const BackgroundMask* background,
                         unsigned threads) {
    if (grid.empty()) {
        throw InvalidArgumentError("sweep: lambda grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
            throw InvalidArgumentError("sweep: lambda grid values must lie in [0, 1]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgumentError("sweep: lambda grid must be strictly increasing");
        }
    }

    SweepReport report;
    report.grid = grid;
    report.objective_kind = kind;
    report.direction = direction_of(kind);
    report.objective_values.assign(grid.size(), 0.0);
    report.component_counts.assign(grid.size(), 0);

    auto evaluate = [&](std::size_t i) {
        const LabelMap labels = segment(image, grid[i], config, background);
        report.component_counts[i] = labels.component_count;
        report.objective_values[i] = evaluate_objective(kind, params, image, labels);
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            evaluate(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < grid.size(); i = next++) {
                        try {
                            evaluate(i);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) {
                                failure = std::current_exception();
                            }
                        }
                    }
                });
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    report.selected_index = select_optimum(report.objective_values, report.direction);
    report.selected_lambda = grid[report.selected_index];
    return report;
}

unsigned threads_from_environment() {
    const char* env = std::getenv("LAMBDASEG_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    unsigned v = 0;
    const char* last = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw InvalidArgumentError("LAMBDASEG_THREADS must be a non-negative integer");
    }
    return v;
}

}  // namespace lambdaseg
