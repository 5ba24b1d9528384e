#include "cli.hpp"

#include "lambdaseg/lambdaseg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <optional>

namespace lambdaseg::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Bad flag values discovered after CLI11 accepted the syntax; exits with 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pipeline failure tagged with the stage that raised it.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error("[" + stage + "] " + what) {}
};

template <class Fn>
auto in_stage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

struct InputOptions {
    std::string input;
    int adjacency = 4;
    std::optional<double> range;
    std::string precut = "none";
    std::string smooth = "none";
    std::string out_dir = ".";

    void add_to(CLI::App& app) {
        app.add_option("input", input, "Input PGM (P2 or P5)")->required();
        app.add_option("--adjacency", adjacency, "Pixel adjacency")
            ->check(CLI::IsMember({4, 8}))
            ->capture_default_str();
        app.add_option("--range", range, "Similarity range R (default: image maxval)");
        app.add_option("--precut", precut,
                       "none | kapur | otsu | peak-fraction[:f] | peak-mode[:f] | fixed:t")
            ->capture_default_str();
        app.add_option("--smooth", smooth, "none | box3")->capture_default_str();
        app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
    }

    ConnectivityConfig connectivity() const {
        ConnectivityConfig c;
        c.adjacency = adjacency == 8 ? Adjacency::Eight : Adjacency::Four;
        c.range = range;
        if (range && !(*range > 0.0)) {
            throw UsageError("--range must be positive");
        }
        return c;
    }

    PrecutSpec precut_spec() const {
        PrecutSpec spec;
        try {
            spec = parse_precut(precut);
        } catch (const InvalidArgumentError& e) {
            throw UsageError(e.what());
        }
        const auto s = parse_smoothing(smooth);
        if (!s) {
            throw UsageError("unknown smoothing '" + smooth + "'");
        }
        spec.smoothing = *s;
        return spec;
    }
};

struct ObjectiveOptions {
    std::string objective = "max-entropy";
    std::string grid = "0:1:0.01";
    double a = 1.0;
    double b = 1.0;
    bool average_outer = false;
    double c = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    void add_to(CLI::App& app) {
        app.add_option("--objective", objective,
                       "max-entropy | max-entropy-combined | min-variance | min-variance-avg | "
                       "mumford-shah")
            ->capture_default_str();
        app.add_option("--grid", grid, "Lambda grid start:end:step, inclusive")
            ->capture_default_str();
        app.add_option("--a", a, "Inner-entropy weight (max-entropy-combined)")
            ->capture_default_str();
        app.add_option("--b", b, "Outer-entropy weight (max-entropy-combined)")
            ->capture_default_str();
        app.add_flag("--average-outer", average_outer, "Average the outer entropy over components");
        app.add_option("--c", c, "Component-count penalty (min-variance)")->capture_default_str();
        app.add_option("--alpha", alpha, "Fitted-variance weight (mumford-shah)")
            ->capture_default_str();
        app.add_option("--beta", beta, "Boundary-length weight (mumford-shah)")
            ->capture_default_str();
        app.add_option("--gamma", gamma, "Fidelity weight (mumford-shah)")->capture_default_str();
    }

    ObjectiveKind kind() const {
        const auto k = parse_objective_kind(objective);
        if (!k) {
            throw UsageError("unknown objective '" + objective + "'");
        }
        return *k;
    }

    std::vector<double> lambda_grid() const {
        try {
            return parse_lambda_grid(grid);
        } catch (const InvalidArgumentError& e) {
            throw UsageError(e.what());
        }
    }

    ObjectiveParams params() const {
        ObjectiveParams p;
        p.a = a;
        p.b = b;
        p.average_outer = average_outer;
        p.weights = {alpha, beta, gamma, c};
        for (double w : {alpha, beta, gamma, c}) {
            if (!(w >= 0.0) || !std::isfinite(w)) {
                throw UsageError("objective weights must be finite and non-negative");
            }
        }
        if (!std::isfinite(a) || !std::isfinite(b)) {
            throw UsageError("--a and --b must be finite");
        }
        return p;
    }
};

Json input_json(const std::string& path, const ImageGrid& image) {
    return {{"path", path},
            {"width", image.width()},
            {"height", image.height()},
            {"maxval", image.maxval()}};
}

Json connectivity_json(const ConnectivityConfig& c, const ImageGrid& image) {
    return {{"adjacency", c.adjacency == Adjacency::Four ? 4 : 8},
            {"composition", "min"},
            {"mu", "linear-range"},
            {"range", c.effective_range(image)}};
}

Json precut_json(const PrecutResult& r) {
    Json j;
    j["smoothing"] = std::string(to_string(r.smoothing));
    if (r.smoothing == Smoothing::Box3) {
        j["smoothing_kernel"] = "3x3 box mean, replicate padding";
    }
    j["method"] = std::string(to_string(r.method));
    j["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
    j["masked_pixels"] = r.masked_count;
    return j;
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    }
    return p;
}

void write_segmentation(const fs::path& dir, const LabelMap& labels,
                        const std::vector<ComponentStats>& stats) {
    write_pgm(label_image(labels), dir / "labels.pgm", true);
    write_text(dir / "labels.csv", labels_csv(labels));
    write_text(dir / "stats.csv", stats_csv(stats));
}

// ---------------------------------------------------------------------------

int cmd_segment(const InputOptions& in, double lambda, std::ostream& out) {
    const ConnectivityConfig config = in.connectivity();
    const PrecutSpec spec = in.precut_spec();
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw UsageError("--lambda must lie in [0, 1]");
    }

    const ImageGrid image = read_pgm(in.input);
    const PrecutResult pre = apply_precut(image, spec);
    const LabelMap labels = segment(pre.image, lambda, config, &pre.background);
    const auto stats = component_stats(pre.image, labels);

    const fs::path dir = prepare_out_dir(in.out_dir);
    write_segmentation(dir, labels, stats);

    out << "components: " << labels.component_count << '\n';
    return 0;
}

struct SweepRun {
    PrecutResult pre;
    SweepReport report;
    LabelMap labels;
    std::vector<ComponentStats> stats;
};

SweepRun run_sweep(const InputOptions& in, const ObjectiveOptions& obj, const ImageGrid& image) {
    const ConnectivityConfig config = in.connectivity();
    const PrecutSpec spec = in.precut_spec();
    const ObjectiveKind kind = obj.kind();
    const auto grid = obj.lambda_grid();
    const ObjectiveParams params = obj.params();
    const unsigned threads = threads_from_environment();

    SweepRun r;
    r.pre = in_stage(spec.smoothing == Smoothing::None ? "threshold" : "smooth/threshold",
                     [&] { return apply_precut(image, spec); });
    r.report = in_stage("sweep", [&] {
        return sweep_select(r.pre.image, config, kind, params, grid, &r.pre.background, threads);
    });
    r.labels = in_stage("segment", [&] {
        return segment(r.pre.image, r.report.selected_lambda, config, &r.pre.background);
    });
    r.stats = component_stats(r.pre.image, r.labels);
    return r;
}

Json base_manifest(const std::string& command, const InputOptions& in,
                   const ObjectiveOptions& obj, const ImageGrid& image, const SweepRun& r) {
    const ObjectiveParams params = obj.params();
    Json config;
    config["command"] = command;
    config["connectivity"] = connectivity_json(in.connectivity(), image);
    config["precut"] = in.precut;
    config["smooth"] = in.smooth;
    config["objective"] = obj.objective;
    config["grid"] = obj.grid;
    config["params"] = sweep_summary(r.report, params)["params"];

    Json m;
    m["tool"] = "lambdaseg";
    m["input"] = input_json(in.input, image);
    m["config"] = config;
    m["config_hash"] = fnv1a_hex(config.dump());
    m["pipeline"] = {"smooth", "threshold", "mask", "segment", "objective-sweep"};
    m["precut"] = precut_json(r.pre);
    m["sweep"] = sweep_summary(r.report, params);
    return m;
}

int cmd_sweep(const InputOptions& in, const ObjectiveOptions& obj, std::ostream& out) {
    // Validate flags before touching the filesystem.
    (void)in.connectivity();
    (void)in.precut_spec();
    (void)obj.kind();
    (void)obj.lambda_grid();
    (void)obj.params();

    const ImageGrid image = read_pgm(in.input);
    const SweepRun r = run_sweep(in, obj, image);

    Json manifest = base_manifest("sweep", in, obj, image, r);
    manifest["outputs"] = {"sweep.csv", "labels.pgm", "labels.csv", "stats.csv", "manifest.json"};

    const fs::path dir = prepare_out_dir(in.out_dir);
    write_text(dir / "sweep.csv", sweep_csv(r.report));
    write_segmentation(dir, r.labels, r.stats);
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");

    out << "selected lambda: " << format_real(r.report.selected_lambda) << '\n'
        << "components: " << r.labels.component_count << '\n';
    return 0;
}

int cmd_pipeline(const InputOptions& in, const ObjectiveOptions& obj,
                 const std::string& select_name, std::ostream& out) {
    (void)in.connectivity();
    (void)in.precut_spec();
    (void)obj.kind();
    (void)obj.lambda_grid();
    (void)obj.params();
    const auto criterion = parse_selection(select_name);
    if (!criterion) {
        throw UsageError("unknown --select '" + select_name + "'");
    }

    const ImageGrid image = in_stage("read", [&] { return read_pgm(in.input); });
    const SweepRun r = run_sweep(in, obj, image);
    const std::uint32_t chosen =
        in_stage("select", [&] { return select_component(r.stats, *criterion); });
    const ImageGrid extracted = extract_component(r.labels, chosen, r.pre.image);

    Json manifest = base_manifest("pipeline", in, obj, image, r);
    manifest["config"]["select"] = select_name;
    manifest["config_hash"] = fnv1a_hex(manifest["config"].dump());
    const ComponentStats& s = r.stats[chosen - 1];
    manifest["selection"] = {{"criterion", select_name},
                             {"component", chosen},
                             {"size", s.size},
                             {"mean", s.mean},
                             {"total_intensity", s.total_intensity}};
    manifest["outputs"] = {"sweep.csv",  "labels.pgm",    "labels.csv",
                           "stats.csv", "component.pgm", "manifest.json"};

    in_stage("write", [&] {
        const fs::path dir = prepare_out_dir(in.out_dir);
        write_text(dir / "sweep.csv", sweep_csv(r.report));
        write_segmentation(dir, r.labels, r.stats);
        write_pgm(extracted, dir / "component.pgm", true);
        write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    });

    out << "threshold: " << (r.pre.threshold ? std::to_string(*r.pre.threshold) : "none") << '\n'
        << "selected lambda: " << format_real(r.report.selected_lambda) << '\n'
        << "components: " << r.labels.component_count << '\n'
        << "selected component: " << chosen << '\n';
    return 0;
}

int cmd_threshold(const std::string& input, const std::string& method, double fraction,
                  const std::string& peak, const std::string& smooth, const std::string& mask_out,
                  const std::string& curve_out, std::ostream& out) {
    const auto smoothing = parse_smoothing(smooth);
    if (!smoothing) {
        throw UsageError("unknown smoothing '" + smooth + "'");
    }
    if (method == "peak-fraction" && !curve_out.empty()) {
        throw UsageError("--curve-out is only available for kapur and otsu");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw UsageError("--fraction must lie in (0, 1]");
    }

    ImageGrid image = read_pgm(input);
    if (*smoothing == Smoothing::Box3) {
        image = box_smooth(image);
    }

    int t = 0;
    if (method == "peak-fraction") {
        t = peak_fraction_threshold(image, fraction,
                                    peak == "mode" ? PeakMode::HistogramMode : PeakMode::Maximum);
    } else {
        const Histogram hist = histogram(image);
        const ThresholdResult r = method == "kapur" ? kapur_threshold(hist) : otsu_threshold(hist);
        t = r.threshold;
        if (!curve_out.empty()) {
            write_text(curve_out, threshold_curve_csv(r));
        }
    }

    if (!mask_out.empty()) {
        // 255 marks the class above the threshold.
        std::vector<Intensity> px(image.size());
        for (std::size_t i = 0; i < px.size(); ++i) {
            px[i] = image[i] > t ? 255 : 0;
        }
        write_pgm(ImageGrid(image.width(), image.height(), 255, std::move(px)), mask_out, true);
    }
    out << t << '\n';
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lambda-connected segmentation with automatic lambda selection", "lambdaseg"};
    app.require_subcommand(1);

    InputOptions seg_in;
    double lambda = 0.0;
    auto* seg = app.add_subcommand("segment", "Segment at a fixed lambda");
    seg_in.add_to(*seg);
    seg->add_option("--lambda", lambda, "Connectivity level in [0, 1]")->required();

    InputOptions sweep_in;
    ObjectiveOptions sweep_obj;
    auto* sweep = app.add_subcommand("sweep", "Select lambda by optimizing an objective over a grid");
    sweep_in.add_to(*sweep);
    sweep_obj.add_to(*sweep);

    std::string th_input;
    std::string th_method;
    double th_fraction = 0.45;
    std::string th_peak = "max";
    std::string th_smooth = "none";
    std::string th_mask;
    std::string th_curve;
    auto* thr = app.add_subcommand("threshold", "Global threshold baselines");
    thr->add_option("input", th_input, "Input PGM")->required();
    thr->add_option("--method", th_method, "kapur | otsu | peak-fraction")
        ->required()
        ->check(CLI::IsMember({"kapur", "otsu", "peak-fraction"}));
    thr->add_option("--fraction", th_fraction, "Fraction for peak-fraction")->capture_default_str();
    thr->add_option("--peak", th_peak, "Peak for peak-fraction: max | mode")
        ->check(CLI::IsMember({"max", "mode"}))
        ->capture_default_str();
    thr->add_option("--smooth", th_smooth, "none | box3")->capture_default_str();
    thr->add_option("--mask-out", th_mask, "Write a 0/255 mask PGM of values above the threshold");
    thr->add_option("--curve-out", th_curve, "Write the criterion curve as CSV");

    InputOptions pipe_in;
    ObjectiveOptions pipe_obj;
    std::string select = "largest";
    auto* pipe = app.add_subcommand(
        "pipeline", "smooth -> precut -> sweep -> segment -> select -> extract");
    pipe_in.add_to(*pipe);
    pipe_obj.add_to(*pipe);
    pipe->add_option("--select", select, "largest | brightest | largest-then-brightest")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*seg) {
            return cmd_segment(seg_in, lambda, out);
        }
        if (*sweep) {
            return cmd_sweep(sweep_in, sweep_obj, out);
        }
        if (*thr) {
            return cmd_threshold(th_input, th_method, th_fraction, th_peak, th_smooth, th_mask,
                                 th_curve, out);
        }
        if (*pipe) {
            return cmd_pipeline(pipe_in, pipe_obj, select, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("lambdaseg");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lambdaseg::cli
