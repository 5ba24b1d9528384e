#include "lambdaseg/preprocess.hpp"

#include "lambdaseg/errors.hpp"

#include <algorithm>
#include <charconv>

namespace lambdaseg {

std::string_view to_string(Smoothing smoothing) {
    return smoothing == Smoothing::Box3 ? "box3" : "none";
}

std::string_view to_string(PrecutMethod method) {
    switch (method) {
        case PrecutMethod::None: return "none";
        case PrecutMethod::Kapur: return "kapur";
        case PrecutMethod::Otsu: return "otsu";
        case PrecutMethod::PeakFraction: return "peak-fraction";
        case PrecutMethod::PeakMode: return "peak-mode";
        case PrecutMethod::Fixed: return "fixed";
    }
    return "unknown";
}

std::optional<Smoothing> parse_smoothing(std::string_view text) {
    if (text == "none") {
        return Smoothing::None;
    }
    if (text == "box3") {
        return Smoothing::Box3;
    }
    return std::nullopt;
}

PrecutSpec parse_precut(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const std::string original(text);

    PrecutSpec spec;
    auto need_no_arg = [&] {
        if (colon != std::string_view::npos) {
            throw InvalidArgumentError("precut '" + original + "' takes no argument");
        }
    };
    if (name == "none") {
        need_no_arg();
        spec.method = PrecutMethod::None;
    } else if (name == "kapur") {
        need_no_arg();
        spec.method = PrecutMethod::Kapur;
    } else if (name == "otsu") {
        need_no_arg();
        spec.method = PrecutMethod::Otsu;
    } else if (name == "peak-fraction" || name == "peak-mode") {
        spec.method = name == "peak-fraction" ? PrecutMethod::PeakFraction : PrecutMethod::PeakMode;
        if (!arg.empty()) {
            auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), spec.fraction);
            if (ec != std::errc{} || ptr != arg.data() + arg.size()) {
                throw InvalidArgumentError("precut '" + original + "': bad fraction");
            }
        }
        if (!(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
            throw InvalidArgumentError("precut '" + original + "': fraction must lie in (0, 1]");
        }
    } else if (name == "fixed") {
        spec.method = PrecutMethod::Fixed;
        auto [ptr, ec] =
            std::from_chars(arg.data(), arg.data() + arg.size(), spec.fixed_threshold);
        if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size() ||
            spec.fixed_threshold < 0) {
            throw InvalidArgumentError("precut '" + original + "': expected fixed:<t>, t >= 0");
        }
    } else {
        throw InvalidArgumentError("unknown precut method '" + original + "'");
    }
    return spec;
}

ImageGrid box_smooth(const ImageGrid& image) {
    const int w = image.width();
    const int h = image.height();
    const auto px = image.pixels();
    std::vector<Intensity> out(px.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint64_t sum = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = std::clamp(y + dy, 0, h - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    const int xx = std::clamp(x + dx, 0, w - 1);
                    sum += px[image.index({xx, yy})];
                }
            }
            // sum / 9 never lands on a half, so this is round-to-nearest.
            out[image.index({x, y})] = static_cast<Intensity>((sum + 4) / 9);
        }
    }
    return ImageGrid(w, h, image.maxval(), std::move(out));
}

PrecutResult apply_precut(const ImageGrid& image, const PrecutSpec& spec) {
    PrecutResult r;
    r.smoothing = spec.smoothing;
    r.method = spec.method;
    r.image = spec.smoothing == Smoothing::Box3 ? box_smooth(image) : image;

    switch (spec.method) {
        case PrecutMethod::None:
            break;
        case PrecutMethod::Kapur:
            r.threshold = kapur_threshold(histogram(r.image)).threshold;
            break;
        case PrecutMethod::Otsu:
            r.threshold = otsu_threshold(histogram(r.image)).threshold;
            break;
        case PrecutMethod::PeakFraction:
            r.threshold = peak_fraction_threshold(r.image, spec.fraction, PeakMode::Maximum);
            break;
        case PrecutMethod::PeakMode:
            r.threshold = peak_fraction_threshold(r.image, spec.fraction, PeakMode::HistogramMode);
            break;
        case PrecutMethod::Fixed:
            if (spec.fixed_threshold < 0 || spec.fixed_threshold > image.maxval()) {
                throw InvalidArgumentError("precut: fixed threshold outside [0, maxval]");
            }
            r.threshold = spec.fixed_threshold;
            break;
    }

    r.background.assign(r.image.size(), 0);
    if (r.threshold) {
        const auto px = r.image.pixels();
        for (std::size_t i = 0; i < px.size(); ++i) {
            if (px[i] < *r.threshold) {
                r.background[i] = 1;
                ++r.masked_count;
            }
        }
    }
    return r;
}

}  // namespace lambdaseg
