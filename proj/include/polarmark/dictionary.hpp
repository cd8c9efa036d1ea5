#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmk {

/// Payload bit matrix of one marker, row-major, grid_n x grid_n.
/// Bit value 1 is a white cell, 0 an ink (dark) cell; the surrounding
/// border ring is always ink and not stored.
struct MarkerBits {
    int grid_n = 0;
    std::vector<std::uint8_t> bits; // grid_n * grid_n entries, each 0/1

    std::uint8_t at(int row, int col) const { return bits[row * grid_n + col]; }
    MarkerBits rotated90() const; // clockwise
};

int hamming(const MarkerBits& a, const MarkerBits& b);

/// Minimal Hamming distance over the four relative rotations of b.
int rotation_min_hamming(const MarkerBits& a, const MarkerBits& b);

/// Set of marker payloads with a guaranteed pairwise rotation-minimal
/// Hamming distance, enabling error-corrected identification.
class Dictionary {
public:
    Dictionary(int grid_n, int min_hamming, std::vector<MarkerBits> markers);

    int grid_n() const { return grid_n_; }
    int min_hamming() const { return min_hamming_; }
    int size() const { return static_cast<int>(markers_.size()); }
    const MarkerBits& marker(int id) const { return markers_[id]; }

    /// floor((min_hamming - 1) / 2): the provably unique correction budget.
    int correction_budget() const { return (min_hamming_ - 1) / 2; }

    /// Exhaustive pairwise re-verification of the distance invariant and of
    /// rotation asymmetry. Throws AlgorithmError on violation. Runs at
    /// construction; callable again for external files.
    void verify() const;

    void save(const std::string& path) const;
    static Dictionary load(const std::string& path);

private:
    int grid_n_;
    int min_hamming_;
    std::vector<MarkerBits> markers_;
};

struct DictionaryGenParams {
    int count = 50;
    int grid_n = 4;
    int min_hamming = 4;
    std::uint64_t seed = 7;
    /// Generation aborts after this many rejected candidates.
    long max_rejections = 1'000'000;
};

/// Greedy randomized generation: each accepted marker keeps rotation-minimal
/// distance >= min_hamming to all previous ones, is not rotation symmetric,
/// and has at least 2 bit transitions per payload row. Deterministic per seed.
Dictionary generate_dictionary(const DictionaryGenParams& params);

} // namespace pmk
