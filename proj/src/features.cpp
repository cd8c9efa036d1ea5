#include "polarmark/features.hpp"

#include <algorithm>
#include <cmath>

#include "polarmark/errors.hpp"
#include "polarmark/rng.hpp"

namespace pmk {

namespace {

// Bresenham circle of radius 3, clockwise from 12 o'clock.
constexpr int kRing[16][2] = {{0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0},  {3, 1},
                              {2, 2},  {1, 3},  {0, 3},  {-1, 3}, {-2, 2}, {-3, 1},
                              {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}};

bool segment_test(const std::uint8_t* px, int stride, int t, int& score) {
    const int c = *px;
    int state[16];
    for (int i = 0; i < 16; ++i) {
        const int v = px[kRing[i][1] * stride + kRing[i][0]];
        state[i] = v > c + t ? 1 : (v < c - t ? -1 : 0);
    }
    for (int dir : {1, -1}) {
        int run = 0;
        // wrap twice around the ring to catch arcs across the seam
        for (int i = 0; i < 32; ++i) {
            if (state[i & 15] == dir) {
                if (++run >= 9) {
                    score = 0;
                    for (int k = 0; k < 16; ++k) {
                        if (state[k] == dir)
                            score += std::abs(int(px[kRing[k][1] * stride + kRing[k][0]]) - c);
                    }
                    return true;
                }
            } else {
                run = 0;
            }
        }
    }
    return false;
}

} // namespace

std::vector<Keypoint> detect_corners(const Frame& f, int max_n, int t) {
    if (f.format() == PixelFormat::Rgb8) throw UsageError("detect_corners expects a gray frame");
    if (f.width() < 7 || f.height() < 7) throw UsageError("detect_corners needs at least 7x7");
    const int w = f.width(), h = f.height();
    const std::uint8_t* data = f.data().data();

    std::vector<float> scores(static_cast<std::size_t>(w) * h, 0.f);
    for (int y = 3; y < h - 3; ++y) {
        for (int x = 3; x < w - 3; ++x) {
            int score;
            if (segment_test(data + y * w + x, w, t, score))
                scores[static_cast<std::size_t>(y) * w + x] = static_cast<float>(score);
        }
    }

    std::vector<Keypoint> out;
    for (int y = 3; y < h - 3; ++y) {
        for (int x = 3; x < w - 3; ++x) {
            const float s = scores[static_cast<std::size_t>(y) * w + x];
            if (s <= 0.f) continue;
            bool maximal = true;
            for (int dy = -1; dy <= 1 && maximal; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const float n = scores[static_cast<std::size_t>(y + dy) * w + (x + dx)];
                    // strict on earlier neighbors, ties broken by scan order
                    if (n > s || (n == s && (dy < 0 || (dy == 0 && dx < 0)))) {
                        maximal = false;
                        break;
                    }
                }
            if (maximal) out.push_back({double(x), double(y), double(s)});
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Keypoint& a, const Keypoint& b) { return a.score > b.score; });
    if (max_n >= 0 && static_cast<int>(out.size()) > max_n) out.resize(max_n);
    return out;
}

namespace {

struct BriefPattern {
    std::array<std::array<std::int8_t, 4>, 256> pairs; // ax, ay, bx, by in [-15, 15]
};

// Fixed comparison pattern; seeded once so descriptors are stable across
// runs and platforms.
const BriefPattern& brief_pattern() {
    static const BriefPattern pattern = [] {
        BriefPattern p;
        Rng rng(0x9C0FFEE5EEDull);
        for (auto& pair : p.pairs) {
            while (true) {
                const int ax = int(rng.below(31)) - 15;
                const int ay = int(rng.below(31)) - 15;
                const int bx = int(rng.below(31)) - 15;
                const int by = int(rng.below(31)) - 15;
                if (ax == bx && ay == by) continue;
                pair = {std::int8_t(ax), std::int8_t(ay), std::int8_t(bx), std::int8_t(by)};
                break;
            }
        }
        return p;
    }();
    return pattern;
}

constexpr int kPatchMargin = 16;

} // namespace

DescriptorSet compute_descriptors(const Frame& f, const std::vector<Keypoint>& keypoints) {
    if (f.format() == PixelFormat::Rgb8)
        throw UsageError("compute_descriptors expects a gray frame");
    const int w = f.width(), h = f.height();
    const std::uint8_t* data = f.data().data();
    const BriefPattern& pat = brief_pattern();

    DescriptorSet set;
    for (int idx = 0; idx < static_cast<int>(keypoints.size()); ++idx) {
        const int cx = static_cast<int>(std::lround(keypoints[idx].x));
        const int cy = static_cast<int>(std::lround(keypoints[idx].y));
        if (cx < kPatchMargin || cy < kPatchMargin || cx >= w - kPatchMargin ||
            cy >= h - kPatchMargin)
            continue;
        Descriptor d;
        for (int bit = 0; bit < 256; ++bit) {
            const auto& pr = pat.pairs[bit];
            const std::uint8_t a = data[(cy + pr[1]) * w + (cx + pr[0])];
            const std::uint8_t b = data[(cy + pr[3]) * w + (cx + pr[2])];
            if (a < b) d.bits[bit >> 6] |= 1ull << (bit & 63);
        }
        set.descriptors.push_back(d);
        set.keypoint_indices.push_back(idx);
    }
    return set;
}

std::vector<Match> match_descriptors(const std::vector<Descriptor>& d1,
                                     const std::vector<Descriptor>& d2) {
    if (d1.empty() || d2.empty()) throw UsageError("match_descriptors: empty descriptor list");
    constexpr double kRatio = 0.8;
    constexpr int kSoloCap = 64;

    std::vector<int> best2(d2.size(), -1), bestd2(d2.size(), 1 << 30);
    for (std::size_t j = 0; j < d2.size(); ++j) {
        for (std::size_t i = 0; i < d1.size(); ++i) {
            const int dist = d1[i].hamming(d2[j]);
            if (dist < bestd2[j]) {
                bestd2[j] = dist;
                best2[j] = static_cast<int>(i);
            }
        }
    }

    std::vector<Match> matches;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        int best = 1 << 30, second = 1 << 30, bestj = -1;
        for (std::size_t j = 0; j < d2.size(); ++j) {
            const int dist = d1[i].hamming(d2[j]);
            if (dist < best) {
                second = best;
                best = dist;
                bestj = static_cast<int>(j);
            } else if (dist < second) {
                second = dist;
            }
        }
        if (bestj < 0) continue;
        if (best2[bestj] != static_cast<int>(i)) continue; // not mutual
        if (second == (1 << 30)) {
            if (best > kSoloCap) continue; // no second neighbor: absolute cap
        } else if (double(best) > kRatio * double(second)) {
            continue;
        }
        matches.push_back({static_cast<int>(i), bestj, best});
    }
    return matches;
}

} // namespace pmk
