#include "polarmark/homography.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "polarmark/errors.hpp"

namespace pmk {

namespace {

bool collinear(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    const double scale = std::max({1.0, (b - a).norm(), (c - a).norm()});
    return std::abs(area2) < 1e-9 * scale * scale;
}

bool any_three_collinear(const std::vector<PointPair>& pairs) {
    const std::size_t n = pairs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (collinear(pairs[i].src, pairs[j].src, pairs[k].src)) return true;
    return false;
}

// Hartley normalization: centroid at origin, mean distance sqrt(2).
Eigen::Matrix3d normalizing_transform(const std::vector<PointPair>& pairs, bool src) {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pairs) centroid += src ? p.src : p.dst;
    centroid /= double(pairs.size());
    double mean_dist = 0.0;
    for (const auto& p : pairs) mean_dist += ((src ? p.src : p.dst) - centroid).norm();
    mean_dist /= double(pairs.size());
    const double s = mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;
    Eigen::Matrix3d t;
    t << s, 0, -s * centroid.x(), 0, s, -s * centroid.y(), 0, 0, 1;
    return t;
}

} // namespace

Homography Homography::inverse() const {
    Homography inv;
    inv.m = m.inverse();
    if (std::abs(inv.m(2, 2)) < 1e-15) throw AlgorithmError("homography not invertible");
    inv.m /= inv.m(2, 2);
    return inv;
}

Homography dlt_homography(const std::vector<PointPair>& pairs) {
    const std::size_t n = pairs.size();
    if (n < 4) throw AlgorithmError("dlt_homography needs at least 4 correspondences");
    if (n <= 8 && any_three_collinear(pairs))
        throw AlgorithmError("dlt_homography: degenerate configuration (collinear points)");

    const Eigen::Matrix3d ts = normalizing_transform(pairs, true);
    const Eigen::Matrix3d td = normalizing_transform(pairs, false);

    Eigen::MatrixXd a(2 * n, 9);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d s = ts * pairs[i].src.homogeneous();
        const Eigen::Vector3d d = td * pairs[i].dst.homogeneous();
        const double x = s.x(), y = s.y();
        const double u = d.x(), v = d.y();
        a.row(2 * i) << -x, -y, -1, 0, 0, 0, u * x, u * y, u;
        a.row(2 * i + 1) << 0, 0, 0, -x, -y, -1, v * x, v * y, v;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    if (svd.singularValues()(7) < 1e-12 * svd.singularValues()(0))
        throw AlgorithmError("dlt_homography: rank-deficient system");
    const Eigen::VectorXd hvec = svd.matrixV().col(8);

    Eigen::Matrix3d hn;
    hn << hvec(0), hvec(1), hvec(2), hvec(3), hvec(4), hvec(5), hvec(6), hvec(7), hvec(8);
    Eigen::Matrix3d m = td.inverse() * hn * ts;
    if (std::abs(m(2, 2)) < 1e-12 * m.norm())
        throw AlgorithmError("dlt_homography: homography at infinity");
    m /= m(2, 2);
    if (std::abs(m.determinant()) < 1e-12) throw AlgorithmError("dlt_homography: singular result");

    Homography h;
    h.m = m;
    h.inlier_count = static_cast<int>(n);
    double ss = 0.0;
    for (const auto& p : pairs) ss += (h.apply(p.src) - p.dst).squaredNorm();
    h.inlier_rms = std::sqrt(ss / double(n));
    return h;
}

Homography estimate_homography_ransac(const std::vector<PointPair>& matches,
                                      const RansacParams& params) {
    const std::size_t n = matches.size();
    if (n < 4) throw AlgorithmError("estimate_homography_ransac needs at least 4 matches");
    Rng rng(params.seed);
    const double tol2 = params.inlier_tolerance_px * params.inlier_tolerance_px;

    int best_count = 0;
    double best_err = 0.0;
    Eigen::Matrix3d best_m = Eigen::Matrix3d::Identity();
    bool have_model = false;

    std::vector<PointPair> sample(4);
    for (int iter = 0; iter < params.iterations; ++iter) {
        // draw 4 distinct indices
        int idx[4];
        for (int k = 0; k < 4;) {
            const int cand = static_cast<int>(rng.below(static_cast<std::uint32_t>(n)));
            bool dup = false;
            for (int j = 0; j < k; ++j) dup |= idx[j] == cand;
            if (!dup) idx[k++] = cand;
        }
        for (int k = 0; k < 4; ++k) sample[k] = matches[idx[k]];

        Homography model;
        try {
            model = dlt_homography(sample);
        } catch (const AlgorithmError&) {
            continue; // degenerate sample
        }

        int count = 0;
        double err = 0.0;
        for (const auto& p : matches) {
            const double e2 = (model.apply(p.src) - p.dst).squaredNorm();
            if (e2 <= tol2) {
                ++count;
                err += e2;
            }
        }
        if (count > best_count || (count == best_count && count > 0 && err < best_err)) {
            best_count = count;
            best_err = err;
            best_m = model.m;
            have_model = true;
        }
    }

    if (!have_model || best_count < 4)
        throw AlgorithmError("estimate_homography_ransac: fewer than 4 inliers (calibration failure)");

    // refit on the consensus set, then recompute the final inlier diagnostics
    Homography search;
    search.m = best_m;
    std::vector<PointPair> inliers;
    for (const auto& p : matches)
        if ((search.apply(p.src) - p.dst).squaredNorm() <= tol2) inliers.push_back(p);

    Homography refit;
    try {
        refit = dlt_homography(inliers);
    } catch (const AlgorithmError&) {
        refit = search; // keep the search model if refit degenerates
    }

    int count = 0;
    double ss = 0.0;
    for (const auto& p : matches) {
        const double e2 = (refit.apply(p.src) - p.dst).squaredNorm();
        if (e2 <= tol2) {
            ++count;
            ss += e2;
        }
    }
    if (count < 4)
        throw AlgorithmError("estimate_homography_ransac: fewer than 4 inliers (calibration failure)");
    refit.inlier_count = count;
    refit.inlier_rms = std::sqrt(ss / double(count));
    return refit;
}

Frame warp_perspective(const Frame& f, const Homography& h, int out_width, int out_height) {
    if (f.format() == PixelFormat::Rgb8)
        throw UsageError("warp_perspective expects a single-channel frame");
    if (std::abs(h.m.determinant()) < 1e-12)
        throw AlgorithmError("warp_perspective: singular homography");
    const Eigen::Matrix3d inv = h.m.inverse();

    Frame out = Frame::gray(out_width, out_height);
    out.timestamp_us = f.timestamp_us;
    const int w = f.width(), hh = f.height();
    const std::uint8_t* src = f.data().data();
    std::uint8_t* dst = out.data().data();

    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const double denom = inv(2, 0) * x + inv(2, 1) * y + inv(2, 2);
            if (std::abs(denom) < 1e-15) {
                dst[y * out_width + x] = 0;
                continue;
            }
            const double sx = (inv(0, 0) * x + inv(0, 1) * y + inv(0, 2)) / denom;
            const double sy = (inv(1, 0) * x + inv(1, 1) * y + inv(1, 2)) / denom;
            const int x0 = static_cast<int>(std::floor(sx));
            const int y0 = static_cast<int>(std::floor(sy));
            if (x0 < -1 || y0 < -1 || x0 > w - 1 || y0 > hh - 1) {
                dst[y * out_width + x] = 0;
                continue;
            }
            const double fx = sx - x0, fy = sy - y0;
            auto sample = [&](int xi, int yi) -> double {
                if (xi < 0 || yi < 0 || xi >= w || yi >= hh) return 0.0;
                return src[yi * w + xi];
            };
            const double v = (1 - fx) * (1 - fy) * sample(x0, y0) +
                             fx * (1 - fy) * sample(x0 + 1, y0) +
                             (1 - fx) * fy * sample(x0, y0 + 1) +
                             fx * fy * sample(x0 + 1, y0 + 1);
            dst[y * out_width + x] =
                static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
        }
    }
    return out;
}

void save_homography(const Homography& h, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write calibration file: " + path);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                  h.m(0, 0), h.m(0, 1), h.m(0, 2), h.m(1, 0), h.m(1, 1), h.m(1, 2), h.m(2, 0),
                  h.m(2, 1), h.m(2, 2));
    out << buf;
    std::snprintf(buf, sizeof(buf), "inliers %d rms %.17g\n", h.inlier_count, h.inlier_rms);
    out << buf;
}

Homography load_homography(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open calibration file: " + path);
    Homography h;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (!(in >> h.m(r, c))) throw DataError("malformed calibration file: " + path);
    std::string tag;
    if (in >> tag && tag == "inliers") {
        in >> h.inlier_count;
        if (in >> tag && tag == "rms") in >> h.inlier_rms;
    }
    return h;
}

} // namespace pmk
