#include "polarmark/frame.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "polarmark/errors.hpp"

namespace pmk {

Frame::Frame(int width, int height, PixelFormat format, std::uint8_t fill)
    : width_(width), height_(height), format_(format) {
    if (width < 1 || height < 1)
        throw UsageError("frame dimensions must be >= 1, got " + std::to_string(width) + "x" +
                         std::to_string(height));
    if (format == PixelFormat::Bin1 && fill != 0 && fill != 255)
        throw UsageError("BIN1 fill value must be 0 or 255");
    data_.assign(static_cast<std::size_t>(width) * height * channel_count(), fill);
}

std::uint8_t Frame::at_clamped(int x, int y, int c) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y, c);
}

bool Frame::is_valid_binary() const {
    if (format_ != PixelFormat::Bin1) return true;
    return std::all_of(data_.begin(), data_.end(),
                       [](std::uint8_t v) { return v == 0 || v == 255; });
}

namespace {

// Skips whitespace and '#' comment lines between PNM header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch)) throw DataError("malformed PNM header in " + path);
    int value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        ch = in.get();
    }
    return value;
}

} // namespace

Frame load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image file: " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw DataError("unsupported image format (want binary PGM/PPM): " + path);
    const bool rgb = magic[1] == '6';

    const int width = next_header_int(in, path);
    const int height = next_header_int(in, path);
    const int maxval = next_header_int(in, path);
    if (maxval != 255) throw DataError("only maxval 255 supported: " + path);
    if (width < 1 || height < 1) throw DataError("bad image dimensions in " + path);

    Frame frame(width, height, rgb ? PixelFormat::Rgb8 : PixelFormat::Gray8);
    in.read(reinterpret_cast<char*>(frame.data().data()),
            static_cast<std::streamsize>(frame.data().size()));
    if (in.gcount() != static_cast<std::streamsize>(frame.data().size()))
        throw DataError("truncated image data in " + path);
    return frame;
}

void save_image(const Frame& frame, const std::string& path) {
    if (frame.empty()) throw UsageError("cannot save empty frame");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write image file: " + path);
    const bool rgb = frame.format() == PixelFormat::Rgb8;
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "%s\n%d %d\n255\n", rgb ? "P6" : "P5",
                                frame.width(), frame.height());
    out.write(header, n);
    out.write(reinterpret_cast<const char*>(frame.data().data()),
              static_cast<std::streamsize>(frame.data().size()));
    if (!out) throw DataError("short write to " + path);
}

} // namespace pmk
