#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include "elastica/grid.hpp"

// Grayscale image files <-> ScalarField. Supported: PGM P2 (ascii) and
// P5 (binary) at 8 or 16 bit, and grayscale PNG at 8 or 16 bit. Pixel
// values map to [0,1] on load; save clamps to [0,1] and quantizes with
// round-half-up.

namespace elastica {

namespace detail {

inline int pgm_next_token(std::istream& in, std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return 0;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok.empty() ? -1 : 0;
}

inline long pgm_next_int(std::istream& in, const std::string& path) {
    std::string tok;
    if (pgm_next_token(in, tok) != 0)
        throw std::runtime_error(path + ": truncated PGM header");
    try {
        return std::stol(tok);
    } catch (...) {
        throw std::runtime_error(path + ": bad integer '" + tok + "' in PGM header");
    }
}

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReadCloser() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriteCloser() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

inline ScalarField load_png(const std::string& path) {
    PngReadCloser c;
    c.fp = std::fopen(path.c_str(), "rb");
    if (!c.fp) throw std::runtime_error(path + ": cannot open file");

    png_byte header[8];
    if (std::fread(header, 1, 8, c.fp) != 8 || png_sig_cmp(header, 0, 8))
        throw std::runtime_error(path + ": not a PNG file");

    c.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!c.png) throw std::runtime_error(path + ": libpng init failed");
    c.info = png_create_info_struct(c.png);
    if (!c.info) throw std::runtime_error(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(c.png))) throw std::runtime_error(path + ": PNG decode error");

    png_init_io(c.png, c.fp);
    png_set_sig_bytes(c.png, 8);
    png_read_info(c.png, c.info);

    int color = png_get_color_type(c.png, c.info);
    int depth = png_get_bit_depth(c.png, c.info);
    if (color != PNG_COLOR_TYPE_GRAY)
        throw std::runtime_error(path + ": only grayscale PNG is supported");
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(c.png);
        depth = 8;
    }
    if (depth == 16) png_set_swap(c.png); // little-endian in-memory samples
    png_read_update_info(c.png, c.info);

    int w = static_cast<int>(png_get_image_width(c.png, c.info));
    int n = static_cast<int>(png_get_image_height(c.png, c.info));
    size_t rowbytes = png_get_rowbytes(c.png, c.info);
    std::vector<png_byte> buf(rowbytes * n);
    std::vector<png_bytep> rows(n);
    for (int j = 0; j < n; ++j) rows[j] = buf.data() + rowbytes * j;
    png_read_image(c.png, rows.data());

    ScalarField out(w, n);
    double maxval = depth == 16 ? 65535.0 : 255.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < w; ++i) {
            double v;
            if (depth == 16)
                v = reinterpret_cast<const uint16_t*>(rows[j])[i];
            else
                v = rows[j][i];
            out(i, j) = v / maxval;
        }
    }
    return out;
}

inline void save_png(const ScalarField& img, const std::string& path, int bit_depth) {
    PngWriteCloser c;
    c.fp = std::fopen(path.c_str(), "wb");
    if (!c.fp) throw std::runtime_error(path + ": cannot open file for writing");

    c.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!c.png) throw std::runtime_error(path + ": libpng init failed");
    c.info = png_create_info_struct(c.png);
    if (!c.info) throw std::runtime_error(path + ": libpng init failed");
    if (setjmp(png_jmpbuf(c.png))) throw std::runtime_error(path + ": PNG encode error");

    int w = img.width(), n = img.height();
    png_init_io(c.png, c.fp);
    png_set_IHDR(c.png, c.info, w, n, bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(c.png, c.info);
    if (bit_depth == 16) png_set_swap(c.png); // little-endian in-memory samples

    double maxval = bit_depth == 16 ? 65535.0 : 255.0;
    if (bit_depth == 16) {
        std::vector<uint16_t> row(w);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < w; ++i) {
                double v = std::clamp(img(i, j), 0.0, 1.0);
                row[i] = static_cast<uint16_t>(std::floor(v * maxval + 0.5));
            }
            png_write_row(c.png, reinterpret_cast<png_bytep>(row.data()));
        }
    } else {
        std::vector<uint8_t> row(w);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < w; ++i) {
                double v = std::clamp(img(i, j), 0.0, 1.0);
                row[i] = static_cast<uint8_t>(std::floor(v * maxval + 0.5));
            }
            png_write_row(c.png, row.data());
        }
    }
    png_write_end(c.png, nullptr);
}

} // namespace detail

inline ScalarField load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open file");

    std::string magic;
    if (detail::pgm_next_token(in, magic) != 0 || (magic != "P2" && magic != "P5"))
        throw std::runtime_error(path + ": not a P2/P5 PGM file");
    long w = detail::pgm_next_int(in, path);
    long n = detail::pgm_next_int(in, path);
    long maxval = detail::pgm_next_int(in, path);
    if (w < 2 || n < 2) throw std::runtime_error(path + ": image must be at least 2x2");
    if (maxval <= 0 || maxval > 65535)
        throw std::runtime_error(path + ": unsupported PGM maxval");

    ScalarField out(static_cast<int>(w), static_cast<int>(n));
    if (magic == "P2") {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < w; ++i)
                out(i, j) = static_cast<double>(detail::pgm_next_int(in, path)) / maxval;
    } else {
        // single whitespace byte after maxval already consumed by the tokenizer
        int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(static_cast<size_t>(w) * n * bytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<size_t>(in.gcount()) != buf.size())
            throw std::runtime_error(path + ": truncated PGM pixel data");
        size_t k = 0;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < w; ++i) {
                unsigned v = buf[k++];
                if (bytes == 2) v = (v << 8) | buf[k++]; // big-endian per PGM spec
                out(i, j) = static_cast<double>(v) / maxval;
            }
        }
    }
    return out;
}

inline void save_pgm(const ScalarField& img, const std::string& path, int bit_depth = 8,
                     bool binary = true) {
    if (bit_depth != 8 && bit_depth != 16)
        throw std::runtime_error(path + ": PGM bit depth must be 8 or 16");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");

    unsigned maxval = bit_depth == 16 ? 65535u : 255u;
    out << (binary ? "P5" : "P2") << "\n" << img.width() << " " << img.height() << "\n"
        << maxval << "\n";
    for (int j = 0; j < img.height(); ++j) {
        for (int i = 0; i < img.width(); ++i) {
            double v = std::clamp(img(i, j), 0.0, 1.0);
            unsigned q = static_cast<unsigned>(std::floor(v * maxval + 0.5));
            if (binary) {
                if (bit_depth == 16) out.put(static_cast<char>(q >> 8));
                out.put(static_cast<char>(q & 0xff));
            } else {
                out << q << (i + 1 == img.width() ? '\n' : ' ');
            }
        }
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                      [](char a, char b) { return std::tolower(a) == std::tolower(b); });
}

inline ScalarField load_image(const std::string& path) {
    if (has_suffix(path, ".png")) return detail::load_png(path);
    if (has_suffix(path, ".pgm")) return load_pgm(path);
    throw std::runtime_error(path + ": unsupported image format (use .pgm or .png)");
}

inline void save_image(const ScalarField& img, const std::string& path, int bit_depth = 8) {
    if (has_suffix(path, ".png")) return detail::save_png(img, path, bit_depth);
    if (has_suffix(path, ".pgm")) return save_pgm(img, path, bit_depth, true);
    throw std::runtime_error(path + ": unsupported image format (use .pgm or .png)");
}

} // namespace elastica
