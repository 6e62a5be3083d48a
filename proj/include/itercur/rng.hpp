#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace itercur {

/// Stream tags keep the random draws of different components disjoint even
/// when they share a user seed.
enum class RngStream : std::uint32_t {
    Sketch = 1,
    SluppSketch = 2,
    Rangefinder = 3,
    GenLeft = 4,
    GenRight = 5,
    GenNoise = 6,
};

/// Philox-style 4x32 counter block cipher (10 rounds).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Standard normal variate keyed by (seed, stream, i, j). The value depends
/// only on the key, not on evaluation order.
double normal_at(std::uint64_t seed, RngStream stream, std::int64_t i, std::int64_t j);

/// Uniform variate on (0, 1), same keying scheme.
double uniform_at(std::uint64_t seed, RngStream stream, std::int64_t i, std::int64_t j);

/// rows x cols matrix of independent standard normals.
Eigen::MatrixXd gaussian_matrix(std::int64_t rows, std::int64_t cols, std::uint64_t seed,
                                RngStream stream);

}  // namespace itercur
