#include "polarmark/dictionary.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polarmark/errors.hpp"
#include "polarmark/rng.hpp"

namespace pmk {

MarkerBits MarkerBits::rotated90() const {
    MarkerBits out;
    out.grid_n = grid_n;
    out.bits.resize(bits.size());
    for (int r = 0; r < grid_n; ++r)
        for (int c = 0; c < grid_n; ++c)
            out.bits[c * grid_n + (grid_n - 1 - r)] = bits[r * grid_n + c];
    return out;
}

int hamming(const MarkerBits& a, const MarkerBits& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) d += a.bits[i] != b.bits[i];
    return d;
}

int rotation_min_hamming(const MarkerBits& a, const MarkerBits& b) {
    MarkerBits rot = b;
    int best = hamming(a, rot);
    for (int k = 0; k < 3; ++k) {
        rot = rot.rotated90();
        best = std::min(best, hamming(a, rot));
    }
    return best;
}

namespace {

bool rotation_symmetric(const MarkerBits& m) {
    MarkerBits rot = m;
    for (int k = 0; k < 3; ++k) {
        rot = rot.rotated90();
        if (hamming(m, rot) == 0) return true;
    }
    return false;
}

int row_transitions(const MarkerBits& m, int row) {
    int t = 0;
    for (int c = 0; c + 1 < m.grid_n; ++c) t += m.at(row, c) != m.at(row, c + 1);
    return t;
}

bool textured(const MarkerBits& m) {
    for (int r = 0; r < m.grid_n; ++r)
        if (row_transitions(m, r) < 2) return false;
    return true;
}

} // namespace

Dictionary::Dictionary(int grid_n, int min_hamming, std::vector<MarkerBits> markers)
    : grid_n_(grid_n), min_hamming_(min_hamming), markers_(std::move(markers)) {
    if (grid_n_ < 2) throw UsageError("dictionary grid_n must be >= 2");
    if (min_hamming_ < 1) throw UsageError("dictionary min_hamming must be >= 1");
    if (markers_.empty()) throw UsageError("dictionary must contain at least one marker");
    for (const auto& m : markers_)
        if (m.grid_n != grid_n_ || m.bits.size() != std::size_t(grid_n_) * grid_n_)
            throw UsageError("dictionary marker has wrong grid size");
    verify();
}

void Dictionary::verify() const {
    for (std::size_t i = 0; i < markers_.size(); ++i) {
        if (rotation_symmetric(markers_[i]))
            throw AlgorithmError("dictionary marker " + std::to_string(i) +
                                 " is rotation symmetric");
        for (std::size_t j = i + 1; j < markers_.size(); ++j) {
            const int d = rotation_min_hamming(markers_[i], markers_[j]);
            if (d < min_hamming_)
                throw AlgorithmError("dictionary markers " + std::to_string(i) + " and " +
                                     std::to_string(j) + " violate min_hamming (distance " +
                                     std::to_string(d) + ")");
        }
    }
}

void Dictionary::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write dictionary file: " + path);
    out << "imdict v1 grid_n=" << grid_n_ << " min_h=" << min_hamming_ << "\n";
    const int nbits = grid_n_ * grid_n_;
    const int nhex = (nbits + 3) / 4;
    for (const auto& m : markers_) {
        // first payload bit lands in the most significant nibble bit
        std::string hex;
        for (int nib = 0; nib < nhex; ++nib) {
            int v = 0;
            for (int k = 0; k < 4; ++k) {
                const int i = nib * 4 + k;
                if (i < nbits && m.bits[i]) v |= 1 << (3 - k);
            }
            hex += "0123456789abcdef"[v];
        }
        out << hex << "\n";
    }
}

Dictionary Dictionary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dictionary file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw DataError("empty dictionary file: " + path);
    int grid_n = 0, min_h = 0;
    if (std::sscanf(header.c_str(), "imdict v1 grid_n=%d min_h=%d", &grid_n, &min_h) != 2)
        throw DataError("bad dictionary header in " + path + ": " + header);

    const int nbits = grid_n * grid_n;
    const int nhex = (nbits + 3) / 4;
    std::vector<MarkerBits> markers;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (static_cast<int>(line.size()) != nhex)
            throw DataError("bad marker line length in " + path + ": " + line);
        MarkerBits m;
        m.grid_n = grid_n;
        m.bits.resize(nbits, 0);
        for (int nib = 0; nib < nhex; ++nib) {
            const char c = line[nib];
            int v;
            if (c >= '0' && c <= '9')
                v = c - '0';
            else if (c >= 'a' && c <= 'f')
                v = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F')
                v = c - 'A' + 10;
            else
                throw DataError("bad hex digit in " + path + ": " + line);
            for (int k = 0; k < 4; ++k) {
                const int i = nib * 4 + k;
                if (i < nbits) m.bits[i] = (v >> (3 - k)) & 1;
            }
        }
        markers.push_back(std::move(m));
    }
    return Dictionary(grid_n, min_h, std::move(markers));
}

Dictionary generate_dictionary(const DictionaryGenParams& params) {
    if (params.count < 1) throw UsageError("dictionary count must be >= 1");
    Rng rng(params.seed);
    const int nbits = params.grid_n * params.grid_n;

    std::vector<MarkerBits> accepted;
    long rejections = 0;
    while (static_cast<int>(accepted.size()) < params.count) {
        MarkerBits cand;
        cand.grid_n = params.grid_n;
        cand.bits.resize(nbits);
        for (auto& b : cand.bits) b = static_cast<std::uint8_t>(rng.below(2));

        bool ok = textured(cand) && !rotation_symmetric(cand);
        if (ok) {
            for (const auto& m : accepted) {
                if (rotation_min_hamming(cand, m) < params.min_hamming) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            accepted.push_back(std::move(cand));
        } else if (++rejections >= params.max_rejections) {
            throw AlgorithmError("dictionary generation exhausted after " +
                                 std::to_string(rejections) + " rejected candidates (placed " +
                                 std::to_string(accepted.size()) + " of " +
                                 std::to_string(params.count) + ")");
        }
    }
    return Dictionary(params.grid_n, params.min_hamming, std::move(accepted));
}

} // namespace pmk
