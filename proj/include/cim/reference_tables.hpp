#pragma once

#include <array>

namespace cim::reference {

// Published 3-decimal values of the record-concomitant estimator moments
// (r = 2). Table 1: generalized exponential marginal with lambda = 1;
// Table 2: uniform (0, 1) marginal.

inline constexpr int kRecordIndex = 2;
inline constexpr std::array<int, 3> kSampleSizes = {10, 15, 20};
inline constexpr std::array<double, 4> kAlphas = {-1.0, -0.5, 0.5, 1.0};
inline constexpr std::array<double, 3> kTheta2 = {0.5, 1.0, 2.0};

// [n][alpha][theta2]
inline constexpr double kTable1Mean[3][4][3] = {
    {{1.429, 0.714, 0.357}, {1.306, 0.653, 0.326}, {1.061, 0.530, 0.265}, {0.938, 0.469, 0.234}},
    {{1.468, 0.734, 0.367}, {1.344, 0.672, 0.336}, {1.096, 0.548, 0.274}, {0.972, 0.486, 0.243}},
    {{1.487, 0.743, 0.372}, {1.362, 0.681, 0.340}, {1.114, 0.557, 0.278}, {0.989, 0.494, 0.247}},
};

inline constexpr double kTable1Variance[3][4][3] = {
    {{0.241, 0.060, 0.015}, {0.205, 0.051, 0.013}, {0.144, 0.036, 0.009}, {0.119, 0.030, 0.007}},
    {{0.165, 0.041, 0.010}, {0.141, 0.035, 0.009}, {0.100, 0.025, 0.006}, {0.083, 0.021, 0.005}},
    {{0.126, 0.031, 0.008}, {0.108, 0.027, 0.007}, {0.077, 0.019, 0.005}, {0.064, 0.016, 0.004}},
};

// [n][alpha]
inline constexpr double kTable2Mean[3][4] = {
    {0.285, 0.254, 0.192, 0.162},
    {0.297, 0.264, 0.200, 0.168},
    {0.302, 0.270, 0.204, 0.171},
};

inline constexpr double kTable2Variance[3][4] = {
    {0.008, 0.007, 0.004, 0.003},
    {0.006, 0.005, 0.003, 0.002},
    {0.005, 0.004, 0.002, 0.001},
};

}  // namespace cim::reference
