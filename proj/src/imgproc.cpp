#include "polarmark/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "polarmark/errors.hpp"

namespace pmk {

void ColorRangeHSV::validate() const {
    if (h_low < 0.0 || h_low >= 360.0 || h_high < 0.0 || h_high >= 360.0)
        throw UsageError("hue bounds must lie in [0, 360)");
    if (s_low > s_high || s_low < 0.0 || s_high > 1.0)
        throw UsageError("saturation range invalid");
    if (v_low > v_high || v_low < 0.0 || v_high > 1.0) throw UsageError("value range invalid");
}

bool ColorRangeHSV::contains(double h, double s, double v) const {
    if (s < s_low || s > s_high || v < v_low || v > v_high) return false;
    if (h_low <= h_high) return h >= h_low && h <= h_high;
    return h >= h_low || h <= h_high; // wraps through 0
}

void GrayRange::validate() const {
    if (low > high || low < 0 || high > 255) throw UsageError("gray range invalid");
}

void rgb_to_hsv_pixel(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8, double& h, double& s,
                      double& v) {
    const double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    v = mx;
    s = mx == 0.0 ? 0.0 : d / mx;
    if (d == 0.0) {
        h = 0.0;
    } else if (mx == r) {
        h = 60.0 * ((g - b) / d);
        if (h < 0.0) h += 360.0;
    } else if (mx == g) {
        h = 60.0 * ((b - r) / d + 2.0);
    } else {
        h = 60.0 * ((r - g) / d + 4.0);
    }
    if (h >= 360.0) h -= 360.0;
}

Frame to_grayscale(const Frame& f) {
    if (f.format() != PixelFormat::Rgb8) throw UsageError("to_grayscale expects an RGB8 frame");
    Frame out = Frame::gray(f.width(), f.height());
    out.timestamp_us = f.timestamp_us;
    const std::uint8_t* src = f.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = out.data().size();
    for (std::size_t i = 0; i < n; ++i) {
        // integer form of round(0.299 R + 0.587 G + 0.114 B)
        const unsigned v = 299u * src[3 * i] + 587u * src[3 * i + 1] + 114u * src[3 * i + 2];
        dst[i] = static_cast<std::uint8_t>((v + 500u) / 1000u);
    }
    return out;
}

std::vector<HsvPixel> rgb_to_hsv(const Frame& f) {
    if (f.format() != PixelFormat::Rgb8) throw UsageError("rgb_to_hsv expects an RGB8 frame");
    const std::size_t n = static_cast<std::size_t>(f.width()) * f.height();
    std::vector<HsvPixel> out(n);
    const std::uint8_t* src = f.data().data();
    for (std::size_t i = 0; i < n; ++i) {
        double h, s, v;
        rgb_to_hsv_pixel(src[3 * i], src[3 * i + 1], src[3 * i + 2], h, s, v);
        out[i] = {static_cast<float>(h), static_cast<float>(s), static_cast<float>(v)};
    }
    return out;
}

Frame subtract_abs(const Frame& a, const Frame& b) {
    if (a.format() != PixelFormat::Gray8 || b.format() != PixelFormat::Gray8)
        throw UsageError("subtract_abs expects GRAY8 frames");
    if (!a.same_size(b)) throw UsageError("subtract_abs: dimension mismatch");
    Frame out = Frame::gray(a.width(), a.height());
    out.timestamp_us = a.timestamp_us;
    const std::uint8_t* pa = a.data().data();
    const std::uint8_t* pb = b.data().data();
    std::uint8_t* po = out.data().data();
    const std::size_t n = out.data().size();
    for (std::size_t i = 0; i < n; ++i)
        po[i] = static_cast<std::uint8_t>(std::abs(int(pa[i]) - int(pb[i])));
    return out;
}

Frame threshold(const Frame& f, int theta) {
    if (f.format() == PixelFormat::Rgb8) throw UsageError("threshold expects a single-channel frame");
    if (theta < 0 || theta > 255) throw UsageError("threshold must be in [0, 255]");
    Frame out = Frame::binary(f.width(), f.height());
    out.timestamp_us = f.timestamp_us;
    const std::uint8_t* src = f.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = out.data().size();
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] >= theta ? 255 : 0;
    return out;
}

Frame mask_color(const Frame& f, const ColorRangeHSV& range) {
    if (f.format() != PixelFormat::Rgb8) throw UsageError("mask_color expects an RGB8 frame");
    range.validate();
    Frame out = Frame::binary(f.width(), f.height());
    out.timestamp_us = f.timestamp_us;
    const std::uint8_t* src = f.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = out.data().size();
    for (std::size_t i = 0; i < n; ++i) {
        double h, s, v;
        rgb_to_hsv_pixel(src[3 * i], src[3 * i + 1], src[3 * i + 2], h, s, v);
        dst[i] = range.contains(h, s, v) ? 0 : 255;
    }
    return out;
}

Frame mask_gray(const Frame& f, const GrayRange& range) {
    if (f.format() == PixelFormat::Rgb8) throw UsageError("mask_gray expects a gray frame");
    range.validate();
    Frame out = Frame::binary(f.width(), f.height());
    out.timestamp_us = f.timestamp_us;
    const std::uint8_t* src = f.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = out.data().size();
    const std::uint8_t lo = static_cast<std::uint8_t>(range.low);
    const std::uint8_t hi = static_cast<std::uint8_t>(range.high);
    for (std::size_t i = 0; i < n; ++i) dst[i] = (src[i] >= lo && src[i] <= hi) ? 255 : 0;
    return out;
}

namespace {

// One separable min pass along x or y with edge replication.
void min_pass(const std::uint8_t* src, std::uint8_t* dst, int w, int h, int radius, bool rows) {
    const int len = rows ? w : h;
    const int count = rows ? h : w;
    for (int j = 0; j < count; ++j) {
        for (int i = 0; i < len; ++i) {
            std::uint8_t m = 255;
            for (int k = -radius; k <= radius; ++k) {
                const int p = std::clamp(i + k, 0, len - 1);
                const std::uint8_t v = rows ? src[j * w + p] : src[p * w + j];
                m = std::min(m, v);
            }
            if (rows)
                dst[j * w + i] = m;
            else
                dst[i * w + j] = m;
        }
    }
}

} // namespace

Frame erode(const Frame& f, int radius, int iterations) {
    if (f.format() == PixelFormat::Rgb8) throw UsageError("erode expects a single-channel frame");
    if (radius < 1) throw UsageError("erode radius must be >= 1");
    if (iterations < 1) throw UsageError("erode iterations must be >= 1");
    Frame cur = f;
    Frame tmp(f.width(), f.height(), f.format());
    Frame out(f.width(), f.height(), f.format());
    out.timestamp_us = f.timestamp_us;
    for (int it = 0; it < iterations; ++it) {
        min_pass(cur.data().data(), tmp.data().data(), f.width(), f.height(), radius, true);
        min_pass(tmp.data().data(), out.data().data(), f.width(), f.height(), radius, false);
        std::swap(cur, out);
    }
    cur.timestamp_us = f.timestamp_us;
    return cur;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) throw UsageError("gaussian sigma must be > 0");
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> half(radius + 1);
    double sum = 0.0;
    for (int k = 0; k <= radius; ++k) {
        half[k] = std::exp(-0.5 * (k * k) / (sigma * sigma));
        sum += k == 0 ? half[k] : 2.0 * half[k];
    }
    for (double& w : half) w /= sum;
    return half;
}

Frame gaussian_blur(const Frame& f, double sigma) {
    if (f.format() == PixelFormat::Rgb8) throw UsageError("gaussian_blur expects a gray frame");
    const std::vector<double> half = gaussian_kernel(sigma);
    const int radius = static_cast<int>(half.size()) - 1;
    const int w = f.width(), h = f.height();

    std::vector<float> kernel(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k)
        kernel[k + radius] = static_cast<float>(half[std::abs(k)]);

    std::vector<float> mid(static_cast<std::size_t>(w) * h);
    const std::uint8_t* src = f.data().data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            float acc = 0.f;
            for (int k = -radius; k <= radius; ++k) {
                const int xi = std::clamp(x + k, 0, w - 1);
                acc += kernel[k + radius] * src[y * w + xi];
            }
            mid[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    Frame out = Frame::gray(w, h);
    out.timestamp_us = f.timestamp_us;
    std::uint8_t* dst = out.data().data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            float acc = 0.f;
            for (int k = -radius; k <= radius; ++k) {
                const int yi = std::clamp(y + k, 0, h - 1);
                acc += kernel[k + radius] * mid[static_cast<std::size_t>(yi) * w + x];
            }
            dst[y * w + x] = static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0l, 255l));
        }
    }
    return out;
}

Frame invert(const Frame& f) {
    Frame out = f;
    for (std::uint8_t& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

} // namespace pmk
