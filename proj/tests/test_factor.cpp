#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "expsum/factor.hpp"

using namespace expsum;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

TEST_CASE("primality on known values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(1009));
    CHECK(is_prime(5003));
    CHECK(is_prime(65537));
    CHECK(is_prime(1000000007ull));
    CHECK(is_prime((1ull << 61) - 1));

    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));    // Carmichael
    CHECK_FALSE(is_prime(1729));   // Carmichael
    CHECK_FALSE(is_prime(25326001));
    CHECK_FALSE(is_prime(1000000007ull * 3));
}

TEST_CASE("factorization of structured values") {
    CHECK(factorize(1).factors.empty());
    CHECK_THROWS_AS(factorize(0), std::domain_error);

    Factorization f64 = factorize(64);
    REQUIRE(f64.factors.size() == 1);
    CHECK(f64.factors[0].first == 2);
    CHECK(f64.factors[0].second == 6);

    Factorization f720 = factorize(720);
    REQUIRE(f720.factors.size() == 3);
    CHECK(f720.factors[0] == std::pair<u64, unsigned>{2, 4});
    CHECK(f720.factors[1] == std::pair<u64, unsigned>{3, 2});
    CHECK(f720.factors[2] == std::pair<u64, unsigned>{5, 1});

    Factorization f = factorize(10006);
    CHECK(f.primes() == std::vector<u64>{2, 5003});

    Factorization big = factorize(1000003ull * 1000033ull);
    REQUIRE(big.factors.size() == 2);
    CHECK(big.factors[0].first == 1000003);
    CHECK(big.factors[1].first == 1000033);
}

TEST_CASE("divisors are sorted and complete") {
    std::vector<u64> d = factorize(720).divisors();
    CHECK(d.size() == 30);
    CHECK(d.front() == 1);
    CHECK(d.back() == 720);
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i - 1] < d[i]);
    for (u64 x : d) CHECK(720 % x == 0);

    CHECK(factorize(1).divisors() == std::vector<u64>{1});
    CHECK(factorize(65536).divisors().size() == 17);
}

TEST_CASE("random round trips") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        u64 n = (rng() % 1000000000000ull) + 2;
        Factorization f = factorize(n);
        u128 prod = 1;
        for (auto [p, e] : f.factors) {
            CHECK(is_prime(p));
            for (unsigned k = 0; k < e; ++k) prod *= p;
        }
        CHECK(prod == n);
        for (std::size_t k = 1; k < f.factors.size(); ++k) {
            CHECK(f.factors[k - 1].first < f.factors[k].first);
        }
    }
}
