#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace expsum {

/// Raised when a request exceeds a configured size cap (maps to exit 65).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t isqrt_floor(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (unsigned __int128)r * r > n) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::uint64_t isqrt_ceil(std::uint64_t n) {
    std::uint64_t r = isqrt_floor(n);
    return r * r == n ? r : r + 1;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Fixed splitting rule deriving per-trial seeds from one root seed.
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ splitmix64(index + 1));
}

/// Floats are printed everywhere with 12 significant digits.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace expsum
