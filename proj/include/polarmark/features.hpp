#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "polarmark/frame.hpp"

namespace pmk {

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    double score = 0.0;
};

/// 256-bit binary descriptor, four 64-bit words.
struct Descriptor {
    std::array<std::uint64_t, 4> bits{};

    int hamming(const Descriptor& o) const {
        int d = 0;
        for (int i = 0; i < 4; ++i) d += __builtin_popcountll(bits[i] ^ o.bits[i]);
        return d;
    }
};

struct DescriptorSet {
    std::vector<Descriptor> descriptors;
    /// Indices into the input keypoint list that survived the border margin.
    std::vector<int> keypoint_indices;
};

struct Match {
    int i = 0; // index into first descriptor list
    int j = 0; // index into second descriptor list
    int hamming = 0;
};

/// Segment-test corner detector: a pixel is a corner when 9 contiguous of
/// the 16 ring pixels are all brighter than center+t or all darker than
/// center-t. Score is the summed absolute ring contrast; 3x3 non-maximal
/// suppression; result sorted by descending score, at most max_n entries.
std::vector<Keypoint> detect_corners(const Frame& f, int max_n, int t = 20);

/// 256 fixed pseudo-random pixel-pair comparisons in a 31x31 patch.
/// Keypoints closer than 16 px to the border are dropped; surviving input
/// indices are reported alongside. Bit set iff intensity(a) < intensity(b).
DescriptorSet compute_descriptors(const Frame& f, const std::vector<Keypoint>& keypoints);

/// Mutual nearest neighbors under Hamming distance with a ratio test
/// (best/second <= 0.8). When no second neighbor exists the match is kept
/// only if its distance is <= 64.
std::vector<Match> match_descriptors(const std::vector<Descriptor>& d1,
                                     const std::vector<Descriptor>& d2);

} // namespace pmk
