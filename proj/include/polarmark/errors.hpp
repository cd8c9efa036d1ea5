#pragma once

#include <stdexcept>
#include <string>

namespace pmk {

/// Bad arguments or malformed configuration (CLI exit code 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Missing or malformed input data: files, datasets, frames (CLI exit code 2).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An algorithm could not produce a valid result, e.g. calibration with
/// too few inliers or a degenerate geometric configuration (CLI exit code 3).
struct AlgorithmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pmk
