#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pmk {

/// Pixel layouts carried by a Frame. BIN1 is a binary mask stored one byte
/// per pixel with values restricted to {0, 255}.
enum class PixelFormat { Gray8, Rgb8, Bin1 };

inline int channels(PixelFormat f) { return f == PixelFormat::Rgb8 ? 3 : 1; }

/// A 2D pixel grid, row-major, 8 bits per channel. The universal currency
/// between acquisition, the detection pipelines and the simulator.
///
/// Invariants: width, height >= 1; data.size() == width*height*channels;
/// BIN1 pixels are 0 or 255. Constructors and loaders enforce them.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height, PixelFormat format, std::uint8_t fill = 0);

    static Frame gray(int width, int height, std::uint8_t fill = 0) {
        return Frame(width, height, PixelFormat::Gray8, fill);
    }
    static Frame rgb(int width, int height, std::uint8_t fill = 0) {
        return Frame(width, height, PixelFormat::Rgb8, fill);
    }
    static Frame binary(int width, int height, bool on = false) {
        return Frame(width, height, PixelFormat::Bin1, on ? 255 : 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    PixelFormat format() const { return format_; }
    int channel_count() const { return channels(format_); }
    bool empty() const { return data_.empty(); }

    std::uint8_t& at(int x, int y, int c = 0) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channel_count() + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channel_count() + c];
    }

    /// at() with edge replication outside the frame bounds.
    std::uint8_t at_clamped(int x, int y, int c = 0) const;

    std::vector<std::uint8_t>& data() { return data_; }
    const std::vector<std::uint8_t>& data() const { return data_; }

    std::optional<std::int64_t> timestamp_us;

    bool same_size(const Frame& o) const { return width_ == o.width_ && height_ == o.height_; }

    /// Validates the BIN1 value constraint; cheap no-op for other formats.
    bool is_valid_binary() const;

private:
    int width_ = 0;
    int height_ = 0;
    PixelFormat format_ = PixelFormat::Gray8;
    std::vector<std::uint8_t> data_;
};

/// Binary PGM (P5) / PPM (P6) I/O, maxval 255, bit-exact round trip.
/// load_image dispatches on the magic number; PGM loads as Gray8 and
/// PPM as Rgb8. Throws DataError on malformed files.
Frame load_image(const std::string& path);
void save_image(const Frame& frame, const std::string& path);

} // namespace pmk
