#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lambdaseg;

TEST_CASE("box_smooth examples") {
    const ImageGrid constant = ImageGrid::filled(4, 3, 255, 33);
    CHECK(box_smooth(constant) == constant);

    const ImageGrid spike(3, 3, 255, {0, 0, 0, 0, 90, 0, 0, 0, 0});
    // Every 3x3 window, padded or not, holds the centre spike exactly once.
    CHECK(box_smooth(spike) == ImageGrid::filled(3, 3, 255, 10));

    // A border spike is replicated into the padding of its edge neighbours.
    const ImageGrid edge(3, 3, 255, {0, 90, 0, 0, 0, 0, 0, 0, 0});
    const ImageGrid e = box_smooth(edge);
    CHECK(e.at({1, 0}) == 20);
    CHECK(e.at({0, 0}) == 20);
    CHECK(e.at({1, 1}) == 10);
    CHECK(e.at({1, 2}) == 0);

    const ImageGrid single(1, 1, 255, {123});
    CHECK(box_smooth(single) == single);
}

TEST_CASE("box_smooth matches the floating-point mean and stays in range") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 1 + static_cast<int>(rng() % 12),
                                                   1 + static_cast<int>(rng() % 12), 1023);
        const ImageGrid s = box_smooth(img);
        CHECK(s == oracle::box_mean(img));
        CHECK(s.min_value() >= img.min_value());
        CHECK(s.max_value() <= img.max_value());
        CHECK(s.maxval() == img.maxval());
    }
}

TEST_CASE("parse_precut") {
    CHECK(parse_precut("none").method == PrecutMethod::None);
    CHECK(parse_precut("kapur").method == PrecutMethod::Kapur);
    CHECK(parse_precut("otsu").method == PrecutMethod::Otsu);
    CHECK(parse_precut("peak-fraction").fraction == 0.45);
    CHECK(parse_precut("peak-fraction:0.3").fraction == 0.3);
    CHECK(parse_precut("peak-mode:0.5").method == PrecutMethod::PeakMode);
    const PrecutSpec fixed = parse_precut("fixed:23");
    CHECK(fixed.method == PrecutMethod::Fixed);
    CHECK(fixed.fixed_threshold == 23);
    CHECK_THROWS_AS(parse_precut("fixed"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_precut("fixed:-1"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_precut("peak-fraction:0"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_precut("kapur:3"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_precut("median"), InvalidArgumentError);
}

TEST_CASE("apply_precut") {
    const ImageGrid img(3, 2, 255, {10, 30, 10, 30, 30, 10});

    PrecutSpec none;
    none.method = PrecutMethod::Fixed;
    none.fixed_threshold = 0;
    const PrecutResult r0 = apply_precut(img, none);
    CHECK(r0.masked_count == 0);
    CHECK(r0.image == img);

    PrecutSpec fixed = parse_precut("fixed:23");
    const PrecutResult r23 = apply_precut(img, fixed);
    CHECK(r23.background == BackgroundMask{1, 0, 1, 0, 0, 1});
    CHECK(r23.masked_count == 3);
    CHECK(r23.image == img);
    CHECK(r23.threshold == 23);

    const ImageGrid bimodal(2, 2, 255, {10, 10, 200, 200});
    const PrecutResult rk = apply_precut(bimodal, parse_precut("kapur"));
    CHECK(rk.threshold == 10);
    CHECK(rk.masked_count == 0);

    CHECK_THROWS_AS(apply_precut(ImageGrid::filled(2, 2, 255, 5), parse_precut("kapur")),
                    DegenerateHistogramError);
    CHECK_THROWS_AS(apply_precut(img, parse_precut("fixed:300")), InvalidArgumentError);

    PrecutSpec smoothed = parse_precut("none");
    smoothed.smoothing = Smoothing::Box3;
    CHECK(apply_precut(img, smoothed).image == box_smooth(img));
}

TEST_CASE("precut mask size equals the count strictly below t") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 9, 9, 255);
        for (const char* method : {"kapur", "otsu", "peak-fraction:0.45"}) {
            PrecutSpec spec = parse_precut(method);
            spec.smoothing = trial % 2 ? Smoothing::Box3 : Smoothing::None;
            const PrecutResult r = apply_precut(img, spec);
            REQUIRE(r.threshold.has_value());
            const auto px = r.image.pixels();
            const auto below = static_cast<std::size_t>(
                std::count_if(px.begin(), px.end(), [&](Intensity v) { return v < *r.threshold; }));
            CHECK(r.masked_count == below);
            CHECK(static_cast<std::size_t>(std::count(r.background.begin(), r.background.end(), 1)) ==
                  below);
        }
    }
}
