#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>

using namespace lambdaseg;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "lambdaseg_pgm_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("decode ASCII and binary graymaps") {
    const ImageGrid expected(2, 2, 255, {10, 10, 10, 200});
    CHECK(decode_pgm("P2 2 2 255 10 10 10 200") == expected);
    CHECK(decode_pgm("P2\n# a comment\n2 2\n# another\n255\n10 10\n10 200\n") == expected);

    std::string binary = "P5\n2 2\n255\n";
    for (int v : {10, 10, 10, 200}) binary.push_back(static_cast<char>(v));
    CHECK(decode_pgm(binary) == expected);
}

TEST_CASE("16-bit binary samples are big-endian") {
    std::string bytes = "P5 2 1 65535\n";
    bytes += std::string("\x01\x02\xff\xff", 4);
    const ImageGrid img = decode_pgm(bytes);
    CHECK(img.maxval() == 65535);
    CHECK(img[0] == 0x0102);
    CHECK(img[1] == 65535);
}

TEST_CASE("malformed graymaps are rejected") {
    CHECK_THROWS_AS(decode_pgm("P2 2 2 255 10 10 10"), TruncationError);
    CHECK_THROWS_AS(decode_pgm(std::string("P5 2 2 255\n\x01\x02\x03", 14)), TruncationError);
    CHECK_THROWS_AS(decode_pgm("P3 2 2 255 1 2 3 4"), FormatError);
    CHECK_THROWS_AS(decode_pgm("P2 2 x 255 1 2 3 4"), FormatError);
    CHECK_THROWS_AS(decode_pgm("P2 2 2"), FormatError);
    CHECK_THROWS_AS(decode_pgm("P2 1 1 65536 0"), UnsupportedError);
    CHECK_THROWS_AS(decode_pgm("P2 1 1 0 0"), UnsupportedError);
    CHECK_THROWS_AS(decode_pgm("P2 1 1 100 101"), FormatError);
    CHECK_THROWS_AS(read_pgm("/nonexistent/file.pgm"), IoError);
}

TEST_CASE("write then read is the identity") {
    SUBCASE("fixture and degenerate sizes") {
        for (bool binary : {false, true}) {
            for (const ImageGrid& img : {ImageGrid(2, 2, 255, {10, 10, 10, 200}),
                                         ImageGrid(1, 1, 255, {0}),
                                         ImageGrid(2, 1, 65535, {65535, 256})}) {
                const auto path = temp_path(binary ? "rt.pgm" : "rt_ascii.pgm");
                write_pgm(img, path, binary);
                CHECK(read_pgm(path) == img);
            }
        }
    }
    SUBCASE("random rasters, both encodings") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            const int maxval = trial % 2 == 0 ? 255 : 1 + static_cast<int>(rng() % 65535);
            const ImageGrid img = oracle::random_image(rng, 1 + static_cast<int>(rng() % 9),
                                                       1 + static_cast<int>(rng() % 9), maxval);
            CHECK(decode_pgm(encode_pgm(img, true)) == img);
            CHECK(decode_pgm(encode_pgm(img, false)) == img);
        }
    }
    CHECK_THROWS_AS(write_pgm(ImageGrid(1, 1, 255, {0}), "/nonexistent/dir/x.pgm"), IoError);
}
