#include "lambdaseg/pgm.hpp"

#include "lambdaseg/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>

namespace lambdaseg {

namespace {

class HeaderCursor {
public:
    explicit HeaderCursor(std::string_view bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    /// Returns false at end of input; throws on a non-numeric token.
    bool next_uint(unsigned long& value, const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            return false;
        }
        const char* first = bytes_.data() + pos_;
        const char* last = bytes_.data() + bytes_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            throw FormatError(std::string("pgm: expected unsigned integer for ") + what);
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        if (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
            bytes_[pos_] != '#') {
            throw FormatError(std::string("pgm: trailing garbage after ") + what);
        }
        return true;
    }

    unsigned long require_uint(const char* what) {
        unsigned long v = 0;
        if (!next_uint(v, what)) {
            throw FormatError(std::string("pgm: header ends before ") + what);
        }
        return v;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

ImageGrid decode_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw FormatError("pgm: missing P2/P5 magic number");
    }
    const bool binary = bytes[1] == '5';
    if (bytes.size() > 2 && !std::isspace(static_cast<unsigned char>(bytes[2])) && bytes[2] != '#') {
        throw FormatError("pgm: malformed magic number");
    }
    HeaderCursor cur(bytes);
    cur.advance(2);

    const unsigned long width = cur.require_uint("width");
    const unsigned long height = cur.require_uint("height");
    const unsigned long maxval = cur.require_uint("maxval");
    if (width == 0 || height == 0) {
        throw FormatError("pgm: zero image dimension");
    }
    if (maxval == 0 || maxval > 65535) {
        throw UnsupportedError("pgm: maxval " + std::to_string(maxval) + " outside [1, 65535]");
    }
    if (width > 1u << 20 || height > 1u << 20) {
        throw UnsupportedError("pgm: image dimensions too large");
    }

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<Intensity> pixels;
    pixels.reserve(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.pos() >= bytes.size()) {
            throw TruncationError("pgm: raster missing");
        }
        cur.advance(1);
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        const std::size_t need = count * sample_bytes;
        if (bytes.size() - cur.pos() < need) {
            throw TruncationError("pgm: raster holds " +
                                  std::to_string((bytes.size() - cur.pos()) / sample_bytes) +
                                  " samples, header declares " + std::to_string(count));
        }
        const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + cur.pos());
        for (std::size_t i = 0; i < count; ++i) {
            unsigned v = sample_bytes == 2 ? (unsigned{raw[2 * i]} << 8) | raw[2 * i + 1] : raw[i];
            if (v > maxval) {
                throw FormatError("pgm: sample " + std::to_string(v) + " exceeds maxval");
            }
            pixels.push_back(static_cast<Intensity>(v));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            unsigned long v = 0;
            if (!cur.next_uint(v, "sample")) {
                throw TruncationError("pgm: raster holds " + std::to_string(i) +
                                      " samples, header declares " + std::to_string(count));
            }
            if (v > maxval) {
                throw FormatError("pgm: sample " + std::to_string(v) + " exceeds maxval");
            }
            pixels.push_back(static_cast<Intensity>(v));
        }
    }

    return ImageGrid(static_cast<int>(width), static_cast<int>(height), static_cast<int>(maxval),
                     std::move(pixels));
}

ImageGrid read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_pgm(bytes);
}

std::string encode_pgm(const ImageGrid& image, bool binary) {
    std::string out = (binary ? "P5\n" : "P2\n") + std::to_string(image.width()) + " " +
                      std::to_string(image.height()) + "\n" + std::to_string(image.maxval()) + "\n";
    const auto px = image.pixels();
    if (binary) {
        const bool wide = image.maxval() > 255;
        out.reserve(out.size() + px.size() * (wide ? 2 : 1));
        for (Intensity v : px) {
            if (wide) {
                out.push_back(static_cast<char>(v >> 8));
            }
            out.push_back(static_cast<char>(v & 0xff));
        }
    } else {
        // One raster row per line; netpbm recommends lines under 70 chars but does not require it.
        for (int y = 0; y < image.height(); ++y) {
            for (int x = 0; x < image.width(); ++x) {
                if (x > 0) {
                    out.push_back(' ');
                }
                out += std::to_string(px[image.index({x, y})]);
            }
            out.push_back('\n');
        }
    }
    return out;
}

void write_pgm(const ImageGrid& image, const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    const std::string bytes = encode_pgm(image, binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

}  // namespace lambdaseg
