#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <array>

namespace pmk {

/// Rigid transform of a marker relative to the camera. Hamilton quaternion,
/// w first; camera frame is z forward, x right, y down. Translation in
/// meters. tz > 0 for anything visible.
struct Pose6DoF {
    Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Matrix3d rotation_matrix() const { return rotation.toRotationMatrix(); }

    Eigen::Vector3d transform(const Eigen::Vector3d& p) const {
        return rotation * p + translation;
    }

    void normalize() { rotation.normalize(); }
};

/// Physical square marker: side length in meters, corners in the marker
/// plane z = 0 centered at the origin. Corner order TL, TR, BR, BL with the
/// marker's own x right and y down, matching the canonical sampling square.
struct MarkerGeometry {
    double side_length = 0.07;

    std::array<Eigen::Vector3d, 4> object_points() const {
        const double s = side_length / 2.0;
        return {Eigen::Vector3d(-s, -s, 0), Eigen::Vector3d(s, -s, 0), Eigen::Vector3d(s, s, 0),
                Eigen::Vector3d(-s, s, 0)};
    }
};

/// Translation L2 distance in meters and rotation angle in degrees
/// (sign-invariant in the quaternions).
std::pair<double, double> pose_error(const Pose6DoF& est, const Pose6DoF& gt);

} // namespace pmk
