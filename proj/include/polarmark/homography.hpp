#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "polarmark/frame.hpp"
#include "polarmark/rng.hpp"

namespace pmk {

struct PointPair {
    Eigen::Vector2d src;
    Eigen::Vector2d dst;
};

/// 3x3 projective transform with m(2,2) normalized to 1, plus the inlier
/// diagnostics of the estimation that produced it.
struct Homography {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    int inlier_count = 0;
    double inlier_rms = 0.0;

    Eigen::Vector2d apply(const Eigen::Vector2d& p) const {
        const Eigen::Vector3d q = m * p.homogeneous();
        return q.hnormalized();
    }

    Homography inverse() const;
};

/// Normalized DLT from >= 4 correspondences. Throws AlgorithmError when the
/// configuration is degenerate (3 collinear source points among a minimal
/// set, or a rank-deficient system).
Homography dlt_homography(const std::vector<PointPair>& pairs);

struct RansacParams {
    int iterations = 2000;
    double inlier_tolerance_px = 2.0;
    std::uint64_t seed = 1;
};

/// RANSAC over point pairs with a DLT refit on the final consensus set.
/// Deterministic for a fixed seed. Throws AlgorithmError when fewer than
/// 4 inliers support the best model.
Homography estimate_homography_ransac(const std::vector<PointPair>& matches,
                                      const RansacParams& params = {});

/// Inverse-mapped bilinear warp: out(p) = f(h^-1 p). Pixels that map
/// outside the source are 0. Gray8/Bin1 input (Bin1 warps as gray and is
/// returned as Gray8 because interpolation introduces intermediate levels).
Frame warp_perspective(const Frame& f, const Homography& h, int out_width, int out_height);

/// Plain-text persistence: row-major matrix on line one, then
/// "inliers <n> rms <r>".
void save_homography(const Homography& h, const std::string& path);
Homography load_homography(const std::string& path);

} // namespace pmk
