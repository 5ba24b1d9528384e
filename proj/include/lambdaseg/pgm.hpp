/**
 * @file pgm.hpp
 * @brief Netpbm graymap (P2 ASCII / P5 binary) reading and writing.
 *
 * Header comments ('#' to end of line) are skipped. Binary rasters with
 * maxval above 255 use two bytes per sample, most significant byte first.
 */

#pragma once

#include "lambdaseg/image.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace lambdaseg {

ImageGrid read_pgm(const std::filesystem::path& path);
void write_pgm(const ImageGrid& image, const std::filesystem::path& path, bool binary = true);

/// In-memory variants of the file functions above.
ImageGrid decode_pgm(std::string_view bytes);
std::string encode_pgm(const ImageGrid& image, bool binary = true);

}  // namespace lambdaseg
