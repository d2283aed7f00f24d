#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "gridsight/error.hpp"
#include "gridsight/image.hpp"

namespace gridsight {
namespace pnm_detail {

inline int next_header_token(std::istream& in) {
    // skips whitespace and '#' comments, reads one non-negative integer
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            break;
        }
    }
    if (c == EOF) throw FormatError("pnm: truncated header");
    if (!std::isdigit(c)) throw FormatError("pnm: expected integer in header");
    long v = 0;
    do {
        v = v * 10 + (c - '0');
        if (v > 1 << 30) throw FormatError("pnm: header value out of range");
        c = in.get();
    } while (c != EOF && std::isdigit(c));
    if (c != EOF) in.unget();
    return static_cast<int>(v);
}

inline int read_sample_ascii(std::istream& in, int maxval) {
    const int v = next_header_token(in);
    if (v > maxval) throw FormatError("pnm: sample exceeds maxval");
    return v;
}

inline int read_sample_binary(std::istream& in, int maxval) {
    int c = in.get();
    if (c == EOF) throw FormatError("pnm: truncated payload");
    if (maxval < 256) return c;
    int lo = in.get();
    if (lo == EOF) throw FormatError("pnm: truncated payload");
    return (c << 8) | lo; // two-byte samples are big-endian
}

} // namespace pnm_detail

// Loads PGM (P2/P5) or PPM (P3/P6). Color is reduced to luma by the floor
// of the channel mean; samples are rescaled to 0..255 as p * 255 / maxval.
inline GrayImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("pnm: cannot open '" + path + "'");
    char p = 0, digit = 0;
    in.get(p);
    in.get(digit);
    if (p != 'P' || digit < '2' || digit > '6' || digit == '4')
        throw FormatError("pnm: bad magic in '" + path + "'");
    const bool color = digit == '3' || digit == '6';
    const bool binary = digit == '5' || digit == '6';

    const int width = pnm_detail::next_header_token(in);
    const int height = pnm_detail::next_header_token(in);
    const int maxval = pnm_detail::next_header_token(in);
    if (width < 1 || height < 1) throw FormatError("pnm: bad dimensions");
    if (maxval < 1 || maxval > 65535) throw FormatError("pnm: maxval out of [1, 65535]");
    if (binary) {
        const int c = in.get();
        if (c == EOF || !std::isspace(c)) throw FormatError("pnm: bad header terminator");
    }

    GrayImage img(width, height);
    const int channels = color ? 3 : 1;
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        long sum = 0;
        for (int ch = 0; ch < channels; ++ch)
            sum += binary ? pnm_detail::read_sample_binary(in, maxval)
                          : pnm_detail::read_sample_ascii(in, maxval);
        const long luma = sum / channels;
        img.data[i] = static_cast<std::uint8_t>(luma * 255 / maxval);
    }
    return img;
}

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Interleaved RGB raster, written as binary PPM.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // r,g,b per pixel

    RgbImage() = default;
    explicit RgbImage(const GrayImage& gray)
        : width(gray.width), height(gray.height),
          data(gray.data.size() * 3) {
        for (std::size_t i = 0; i < gray.data.size(); ++i)
            data[3 * i] = data[3 * i + 1] = data[3 * i + 2] = gray.data[i];
    }

    void set(int x, int y, Rgb c) {
        if (x < 0 || x >= width || y < 0 || y >= height) return;
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        data[i] = c.r;
        data[i + 1] = c.g;
        data[i + 2] = c.b;
    }
};

inline void write_ppm(std::ostream& out, const RgbImage& img) {
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
}

inline void write_pgm(std::ostream& out, const GrayImage& img) {
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
}

} // namespace gridsight
