#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace expsum {

/// Prime factorization of a positive 64-bit integer.
struct Factorization {
    std::uint64_t n = 1;
    /// (prime, exponent) pairs, primes strictly ascending.
    std::vector<std::pair<std::uint64_t, unsigned>> factors;

    std::vector<std::uint64_t> primes() const;
    /// All divisors of n, sorted ascending.
    std::vector<std::uint64_t> divisors() const;
};

/// Deterministic Miller-Rabin, exact for the full 64-bit range.
bool is_prime(std::uint64_t n);

/// Trial division up to 1e6, then Brent's cycle variant of Pollard rho with a
/// fixed polynomial x^2+c (c bumped deterministically on failure).
/// Throws std::domain_error for n = 0; factorize(1) has an empty factor list.
Factorization factorize(std::uint64_t n);

}  // namespace expsum
