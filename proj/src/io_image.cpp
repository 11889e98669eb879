#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <png.h>

#include "meshref/io.hpp"

namespace meshref {

namespace {

std::string lower_ext(const std::filesystem::path& p) {
    std::string s = p.extension().string();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

int next_pnm_int(std::istream& in) {
    // skips whitespace and '#' comments
    while (true) {
        const int c = in.peek();
        if (c == '#') {
            std::string skip;
            std::getline(in, skip);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v;
    if (!(in >> v))
        throw IoError("PGM: malformed header");
    return v;
}

Image load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open image: " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '2'))
        throw IoError("PGM: bad magic in " + path.string());
    const bool binary = magic[1] == '5';
    const int w = next_pnm_int(in);
    const int h = next_pnm_int(in);
    const int maxval = next_pnm_int(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
        throw IoError("PGM: unsupported header in " + path.string());
    Image img(w, h);
    if (binary) {
        in.get(); // single whitespace after maxval
        std::vector<std::uint8_t> row(static_cast<std::size_t>(w));
        for (int y = 0; y < h; ++y) {
            in.read(reinterpret_cast<char*>(row.data()), w);
            if (!in)
                throw IoError("PGM: truncated data in " + path.string());
            for (int x = 0; x < w; ++x)
                img.at(x, y) = row[x] / static_cast<double>(maxval);
        }
    } else {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                img.at(x, y) = next_pnm_int(in) / static_cast<double>(maxval);
    }
    return img;
}

struct PngReadCtx {
    std::ifstream in;
};

void png_read_fn(png_structp png, png_bytep out, png_size_t n) {
    auto* ctx = static_cast<PngReadCtx*>(png_get_io_ptr(png));
    ctx->in.read(reinterpret_cast<char*>(out), static_cast<std::streamsize>(n));
    if (!ctx->in)
        png_error(png, "short read");
}

Image load_png(const std::filesystem::path& path) {
    PngReadCtx ctx;
    ctx.in.open(path, std::ios::binary);
    if (!ctx.in)
        throw IoError("cannot open image: " + path.string());
    png_byte header[8];
    ctx.in.read(reinterpret_cast<char*>(header), 8);
    if (!ctx.in || png_sig_cmp(header, 0, 8) != 0)
        throw IoError("PNG: bad signature in " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info)
        throw IoError("PNG: allocation failure");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError("PNG: decode error in " + path.string());
    }
    png_set_read_fn(png, &ctx, png_read_fn);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_set_expand(png);            // palette/low-bit -> 8-bit
    png_set_strip_16(png);          // 16-bit -> 8-bit
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    std::vector<std::uint8_t> rowbuf(static_cast<std::size_t>(w) * channels);

    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        png_read_row(png, rowbuf.data(), nullptr);
        for (int x = 0; x < w; ++x) {
            double v;
            if (channels >= 3) {
                v = (0.299 * rowbuf[x * channels] + 0.587 * rowbuf[x * channels + 1] +
                     0.114 * rowbuf[x * channels + 2]) / 255.0;
            } else {
                v = rowbuf[x * channels] / 255.0;
            }
            img.at(x, y) = v;
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

struct PngWriteCtx {
    std::ofstream out;
};

void png_write_fn(png_structp png, png_bytep data, png_size_t n) {
    auto* ctx = static_cast<PngWriteCtx*>(png_get_io_ptr(png));
    ctx->out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!ctx->out)
        png_error(png, "short write");
}

void png_flush_fn(png_structp png) {
    static_cast<PngWriteCtx*>(png_get_io_ptr(png))->out.flush();
}

void write_png_gray(const std::filesystem::path& path, int w, int h, int bit_depth,
                    const std::vector<std::uint8_t>& bytes) {
    PngWriteCtx ctx;
    ctx.out.open(path, std::ios::binary);
    if (!ctx.out)
        throw IoError("cannot write image: " + path.string());
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info)
        throw IoError("PNG: allocation failure");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG: encode error for " + path.string());
    }
    png_set_write_fn(png, &ctx, png_write_fn, png_flush_fn);
    png_set_IHDR(png, info, w, h, bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const std::size_t stride = static_cast<std::size_t>(w) * (bit_depth / 8);
    for (int y = 0; y < h; ++y)
        png_write_row(png, const_cast<png_bytep>(bytes.data() + y * stride));
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
}

} // namespace

Image load_image(const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pgm")
        return load_pgm(path);
    if (ext == ".png")
        return load_png(path);
    throw IoError("unsupported image extension '" + ext + "': " + path.string());
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write image: " + path.string());
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[x] = static_cast<std::uint8_t>(std::lround(v * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()), img.width);
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

void save_png8(const Image& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(img.width) * img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            bytes[static_cast<std::size_t>(y) * img.width + x] =
                static_cast<std::uint8_t>(std::lround(std::clamp(img.at(x, y), 0.0, 1.0) * 255.0));
    write_png_gray(path, img.width, img.height, 8, bytes);
}

void save_pfm(const std::vector<float>& values, int width, int height, const std::filesystem::path& path) {
    if (static_cast<std::size_t>(width) * height != values.size())
        throw InvalidParamsError("save_pfm: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write image: " + path.string());
    out << "Pf\n" << width << ' ' << height << "\n-1.0\n";
    // PFM stores rows bottom-up
    for (int y = height - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(values.data() + static_cast<std::size_t>(y) * width),
                  static_cast<std::streamsize>(width * sizeof(float)));
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::vector<float> load_pfm(const std::filesystem::path& path, int& width, int& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open image: " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "Pf")
        throw IoError("PFM: expected grayscale 'Pf' in " + path.string());
    double scale;
    in >> width >> height >> scale;
    in.get();
    if (width <= 0 || height <= 0)
        throw IoError("PFM: bad dimensions in " + path.string());
    if (scale >= 0)
        throw IoError("PFM: big-endian files are not supported");
    std::vector<float> values(static_cast<std::size_t>(width) * height);
    for (int y = height - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(values.data() + static_cast<std::size_t>(y) * width),
                static_cast<std::streamsize>(width * sizeof(float)));
        if (!in)
            throw IoError("PFM: truncated data in " + path.string());
    }
    return values;
}

void save_png16_normalized(const std::vector<double>& values, int width, int height,
                           double lo, double hi, const std::filesystem::path& path) {
    if (static_cast<std::size_t>(width) * height != values.size())
        throw InvalidParamsError("save_png16_normalized: size mismatch");
    const double span = hi > lo ? hi - lo : 1.0;
    std::vector<std::uint8_t> bytes(values.size() * 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        std::uint16_t q = 0;
        if (std::isfinite(v)) {
            v = std::clamp((v - lo) / span, 0.0, 1.0);
            q = static_cast<std::uint16_t>(std::lround(v * 65535.0));
        }
        // PNG is big-endian
        bytes[2 * i] = static_cast<std::uint8_t>(q >> 8);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(q & 0xff);
    }
    write_png_gray(path, width, height, 16, bytes);
}

} // namespace meshref
