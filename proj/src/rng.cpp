#include "itercur/rng.hpp"

#include <cmath>

namespace itercur {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    // 53-bit mantissa, offset by half an ulp so the result stays inside (0,1).
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

inline std::array<std::uint32_t, 4> counter_for(RngStream stream, std::int64_t i,
                                                std::int64_t j) {
    return {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(i),
            static_cast<std::uint32_t>(j),
            static_cast<std::uint32_t>((static_cast<std::uint64_t>(i) >> 32) ^
                                       ((static_cast<std::uint64_t>(j) >> 32) << 8))};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * counter[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * counter[2];
        counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

double normal_at(std::uint64_t seed, RngStream stream, std::int64_t i, std::int64_t j) {
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32(counter_for(stream, i, j), key);
    const double u1 = to_unit(r[0], r[1]);
    const double u2 = to_unit(r[2], r[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double uniform_at(std::uint64_t seed, RngStream stream, std::int64_t i, std::int64_t j) {
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                              static_cast<std::uint32_t>(seed >> 32)};
    const auto r = philox4x32(counter_for(stream, i, j), key);
    return to_unit(r[0], r[1]);
}

Eigen::MatrixXd gaussian_matrix(std::int64_t rows, std::int64_t cols, std::uint64_t seed,
                                RngStream stream) {
    Eigen::MatrixXd out(rows, cols);
    for (std::int64_t j = 0; j < cols; ++j)
        for (std::int64_t i = 0; i < rows; ++i) out(i, j) = normal_at(seed, stream, i, j);
    return out;
}

}  // namespace itercur
