#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace lambdaseg;

namespace {

const ImageGrid kFixture(2, 2, 255, {10, 10, 10, 200});
constexpr double kFixtureEntropy = 0.5623351446188083;  // -(3/4)ln(3/4) - (1/4)ln(1/4)

LabelMap one_component(const ImageGrid& img) {
    return LabelMap{img.width(), img.height(), std::vector<std::uint32_t>(img.size(), 1), 1};
}

}  // namespace

TEST_CASE("component_stats examples") {
    const auto constant = component_stats(ImageGrid::filled(3, 3, 255, 42),
                                          one_component(ImageGrid::filled(3, 3, 255, 42)));
    REQUIRE(constant.size() == 1);
    CHECK(constant[0].size == 9);
    CHECK(constant[0].variance == 0.0);
    CHECK(constant[0].entropy == 0.0);

    const auto split = component_stats(kFixture, segment(kFixture, 0.5));
    REQUIRE(split.size() == 2);
    CHECK(split[0].id == 1);
    CHECK(split[0].size == 3);
    CHECK(split[0].mean == 10.0);
    CHECK(split[0].variance == 0.0);
    CHECK(split[0].entropy == 0.0);
    CHECK(split[1].total_intensity == 200.0);

    const auto whole = component_stats(kFixture, segment(kFixture, 0.0));
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].mean == 57.5);
    CHECK(whole[0].variance == 6768.75);
    CHECK(whole[0].entropy == doctest::Approx(kFixtureEntropy).epsilon(1e-12));
    CHECK(whole[0].histogram == std::vector<HistogramBin>{{10, 3}, {200, 1}});

    LabelMap wrong{3, 1, {1, 1, 1}, 1};
    CHECK_THROWS_AS(component_stats(kFixture, wrong), InvalidArgumentError);
}

TEST_CASE("component_stats agrees with direct evaluation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 10, 8, 255);
        const LabelMap labels = segment(img, 0.8 + 0.01 * (trial % 15));
        const auto stats = component_stats(img, labels);
        REQUIRE(stats.size() == labels.component_count);
        for (const auto& s : stats) {
            const auto values = oracle::component_values(img, labels, s.id);
            CHECK(s.size == values.size());
            CHECK(s.entropy == doctest::Approx(oracle::entropy_of(values)).epsilon(1e-12));
            CHECK(s.variance == doctest::Approx(oracle::variance_of(values)).epsilon(1e-9));
            double sq = 0.0;
            for (int v : values) sq += static_cast<double>(v) * v;
            const double raw = sq / static_cast<double>(values.size()) - s.mean * s.mean;
            CHECK(s.variance == doctest::Approx(raw).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("inner_entropy_total") {
    CHECK(inner_entropy_total(kFixture, segment(kFixture, 1.0)) == 0.0);
    CHECK(inner_entropy_total(kFixture, segment(kFixture, 0.0)) ==
          doctest::Approx(kFixtureEntropy).epsilon(1e-12));
    CHECK(inner_entropy_total(kFixture, segment(kFixture, 0.5)) == 0.0);

    LabelMap empty{2, 2, {0, 0, 0, 0}, 0};
    CHECK(inner_entropy_total(kFixture, empty) == 0.0);
}

TEST_CASE("outer_entropy_total") {
    CHECK(outer_entropy_total(kFixture, segment(kFixture, 0.0), false) == 0.0);
    CHECK(outer_entropy_total(kFixture, segment(kFixture, 0.5), false) == 0.0);

    const ImageGrid three(3, 1, 255, {0, 128, 255});
    const LabelMap singletons = segment(three, 1.0);
    REQUIRE(singletons.component_count == 3);
    CHECK(outer_entropy_total(three, singletons, false) ==
          doctest::Approx(2.0794415416798357).epsilon(1e-12));
    CHECK(outer_entropy_total(three, singletons, true) ==
          doctest::Approx(0.6931471805599453).epsilon(1e-12));
}

TEST_CASE("outer entropy agrees with direct complement evaluation") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 9, 7, 255, {0, 10, 20, 30, 90, 100, 250});
        const LabelMap labels = segment(img, 0.95);
        double expected = 0.0;
        for (std::uint32_t id = 1; id <= labels.component_count; ++id) {
            std::vector<int> rest;
            for (std::size_t i = 0; i < img.size(); ++i) {
                if (labels.labels[i] != id) rest.push_back(img[i]);
            }
            if (!rest.empty()) expected += oracle::entropy_of(rest);
        }
        CHECK(outer_entropy_total(img, labels, false) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("combined_entropy") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 6, 6, 255);
        const LabelMap labels = segment(img, 0.9);
        CHECK(combined_entropy(img, labels, 1.0, 0.0, false) == inner_entropy_total(img, labels));
    }
    CHECK(combined_entropy(kFixture, segment(kFixture, 0.0), 0.0, 1.0, false) == 0.0);

    const ImageGrid three(3, 1, 255, {0, 128, 255});
    CHECK(combined_entropy(three, segment(three, 1.0), 1.0, 1.0, false) ==
          doctest::Approx(2.0794415416798357).epsilon(1e-12));
    CHECK_THROWS_AS(combined_entropy(three, segment(three, 1.0), NAN, 1.0, false),
                    InvalidArgumentError);
}

TEST_CASE("min_variance_objective") {
    CHECK(min_variance_objective(kFixture, segment(kFixture, 0.5), 1.0, false) == 2.0);
    CHECK(min_variance_objective(kFixture, segment(kFixture, 0.0), 1.0, false) == 6769.75);
    CHECK(min_variance_objective(kFixture, segment(kFixture, 0.0), 0.0, true) == 6768.75);
    CHECK(min_variance_objective(kFixture, segment(kFixture, 0.5), 5.0, true) == 0.0);

    const ImageGrid constant = ImageGrid::filled(4, 4, 255, 3);
    for (double lambda : {0.0, 0.5, 1.0}) {
        CHECK(min_variance_objective(constant, segment(constant, lambda), 1.0, true) == 0.0);
    }
}

TEST_CASE("refining a segmentation can raise the unweighted variance sum") {
    // 98 zeros followed by 60, 90: at lambda = 0.8 the 0-60 step (alpha 0.765)
    // breaks while the 60-90 step (alpha 0.882) holds.
    std::vector<Intensity> px(98, 0);
    px.push_back(60);
    px.push_back(90);
    const ImageGrid img(100, 1, 255, px);
    const LabelMap coarse = segment(img, 0.0);
    const LabelMap fine = segment(img, 0.8);
    REQUIRE(coarse.component_count == 1);
    REQUIRE(fine.component_count == 2);
    CHECK(min_variance_objective(img, coarse, 0.0, false) == doctest::Approx(114.75));
    CHECK(min_variance_objective(img, fine, 0.0, false) == 225.0);
}

TEST_CASE("size-weighted within-component scatter never increases along lambda") {
    std::mt19937_64 rng(31);
    auto scatter = [](const ImageGrid& img, const LabelMap& labels) {
        double total = 0.0;
        for (const auto& s : component_stats(img, labels)) {
            total += static_cast<double>(s.size) * s.variance;
        }
        return total;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 10, 10, 255);
        double previous = scatter(img, segment(img, 0.0));
        for (int k = 1; k <= 100; k += 3) {
            const double v = scatter(img, segment(img, k / 100.0));
            CHECK(v <= previous * (1 + 1e-12));
            previous = v;
        }
    }
}

TEST_CASE("boundary_length") {
    CHECK(boundary_length(segment(ImageGrid::filled(3, 3, 255, 1), 0.0)) == 0);
    CHECK(boundary_length(LabelMap{2, 2, {1, 1, 1, 2}, 2}) == 2);

    LabelMap vertical{4, 4, {}, 2};
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) vertical.labels.push_back(x < 2 ? 1 : 2);
    }
    CHECK(boundary_length(vertical) == 4);

    // Background boundaries count; background-to-background pairs do not.
    CHECK(boundary_length(LabelMap{3, 1, {0, 0, 1}, 1}) == 1);
}

TEST_CASE("fit_image") {
    const FittedImage split = fit_image(kFixture, segment(kFixture, 0.5));
    CHECK(split.values == std::vector<double>{10, 10, 10, 200});

    const FittedImage whole = fit_image(kFixture, segment(kFixture, 0.0));
    CHECK(whole.values == std::vector<double>{57.5, 57.5, 57.5, 57.5});

    const ImageGrid constant = ImageGrid::filled(3, 2, 255, 8);
    CHECK(fit_image(constant, segment(constant, 0.3)).values == std::vector<double>(6, 8.0));

    LabelMap partial{2, 2, {1, 1, 1, 0}, 1};
    CHECK(fit_image(kFixture, partial).values == std::vector<double>{10, 10, 10, 200});
}

TEST_CASE("ms_objective") {
    const MSWeights unit{1, 1, 1, 1};
    const MSTerms split = ms_terms(kFixture, segment(kFixture, 0.5), unit);
    CHECK(split.fit_variance == 0.0);
    CHECK(split.boundary == 2);
    CHECK(split.fidelity == 0.0);
    CHECK(ms_objective(kFixture, segment(kFixture, 0.5), unit) == 2.0);

    const MSTerms whole = ms_terms(kFixture, segment(kFixture, 0.0), unit);
    CHECK(whole.fit_variance == 0.0);
    CHECK(whole.boundary == 0);
    CHECK(whole.fidelity == 27075.0);
    CHECK(ms_objective(kFixture, segment(kFixture, 0.0), unit) == 27075.0);

    const ImageGrid constant = ImageGrid::filled(5, 4, 255, 77);
    for (double lambda : {0.0, 0.5, 1.0}) {
        CHECK(ms_objective(constant, segment(constant, lambda), {2, 3, 4, 1}) == 0.0);
    }
    CHECK_THROWS_AS(ms_objective(kFixture, segment(kFixture, 0.5), {-1, 1, 1, 1}),
                    InvalidArgumentError);
}

TEST_CASE("ms D term vanishes when every component is constant") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const ImageGrid img = oracle::random_image(rng, 8, 8, 255, {0, 50, 100});
        const MSTerms t = ms_terms(img, segment(img, 1.0), {});
        CHECK(t.fidelity == 0.0);
        CHECK(t.fit_variance == 0.0);
    }
}

TEST_CASE("objective evaluation is bit-identical on repeat") {
    std::mt19937_64 rng(41);
    const ImageGrid img = oracle::random_image(rng, 16, 16, 255);
    const LabelMap labels = segment(img, 0.93);
    CHECK(inner_entropy_total(img, labels) == inner_entropy_total(img, labels));
    CHECK(outer_entropy_total(img, labels, true) == outer_entropy_total(img, labels, true));
    CHECK(min_variance_objective(img, labels, 1, false) == min_variance_objective(img, labels, 1, false));
    CHECK(ms_objective(img, labels, {}) == ms_objective(img, labels, {}));
}
