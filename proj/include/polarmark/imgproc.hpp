#pragma once

#include <cstdint>

#include "polarmark/frame.hpp"

namespace pmk {

/// HSV color range with hue in degrees [0, 360) and saturation/value as
/// fractions. A range with h_low > h_high wraps through 0 degrees.
struct ColorRangeHSV {
    double h_low = 0.0;
    double h_high = 360.0;
    double s_low = 0.0;
    double s_high = 1.0;
    double v_low = 0.0;
    double v_high = 1.0;

    void validate() const;
    bool contains(double h, double s, double v) const;
};

/// Inclusive gray-level band [low, high] on the 0..255 scale.
struct GrayRange {
    int low = 0;
    int high = 255;

    void validate() const;
};

struct HsvPixel {
    float h; // degrees [0, 360)
    float s; // [0, 1]
    float v; // [0, 1]
};

/// Double-precision hexcone HSV of one RGB pixel; the reference definition
/// every fast path must agree with.
void rgb_to_hsv_pixel(std::uint8_t r, std::uint8_t g, std::uint8_t b, double& h, double& s,
                      double& v);

/// Luma conversion: gray = round(0.299 R + 0.587 G + 0.114 B).
Frame to_grayscale(const Frame& f);

/// Per-pixel HSV of an RGB8 frame.
std::vector<HsvPixel> rgb_to_hsv(const Frame& f);

/// Per-pixel absolute difference of two same-sized GRAY8 frames.
Frame subtract_abs(const Frame& a, const Frame& b);

/// Binarize: pixel >= theta -> 255, else 0. theta must be in [0, 255].
Frame threshold(const Frame& f, int theta);

/// Marks pixels whose HSV falls inside the range as black (0) and everything
/// else white (255), so a blocked marker pattern on an in-range background
/// comes out as a bright pattern on black.
Frame mask_color(const Frame& f, const ColorRangeHSV& range);

/// Pixels inside [low, high] -> 255, others 0.
Frame mask_gray(const Frame& f, const GrayRange& range);

/// Min filter over a (2*radius+1)^2 square neighborhood, repeated
/// `iterations` times. Borders replicate edge pixels.
Frame erode(const Frame& f, int radius, int iterations = 1);

/// Separable Gaussian blur, kernel radius ceil(3*sigma), weights normalized
/// to sum 1. Borders replicate edge pixels.
Frame gaussian_blur(const Frame& f, double sigma);

/// One Gaussian half-kernel (center..radius), normalized with its mirror to
/// sum 1 +- 1e-9. Exposed for the normalization check.
std::vector<double> gaussian_kernel(double sigma);

/// Inverts an 8-bit frame (255 - v). Format is preserved.
Frame invert(const Frame& f);

} // namespace pmk
