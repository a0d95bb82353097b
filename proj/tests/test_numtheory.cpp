#include <doctest.h>

#include <random>

#include "k3arith/error.hpp"
#include "k3arith/numtheory.hpp"
#include "k3arith/poly.hpp"

using namespace k3;
using poly::IntPoly;

TEST_CASE("modular helpers")
{
    CHECK(mod(-7, 5) == 3);
    CHECK(gcd(12, -18) == 6);
    auto e = xgcd(240, 46);
    CHECK(e.g == 2);
    CHECK(240 * e.x + 46 * e.y == 2);
    CHECK(powmod(3, 200, 1000003) == powmod(9, 100, 1000003));
    CHECK(isqrt(99) == 9);
    CHECK(isqrt(100) == 10);
    CHECK(euler_phi(66) == 20);
    CHECK(euler_phi(1) == 1);
    CHECK_THROWS_AS(checked_pow(10, 19), UsageError);
    CHECK(checked_pow(5, 22) == 2384185791015625LL);
}

TEST_CASE("primality against trial division")
{
    auto slow = [](std::int64_t n) {
        if (n < 2)
            return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    };
    for (std::int64_t n = -3; n < 5000; ++n)
        REQUIRE(is_prime(n) == slow(n));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(2147483647LL * 3));
}

TEST_CASE("squarefree parts")
{
    CHECK(squarefree_part(BigInt(72)) == 2);
    CHECK(squarefree_part(BigInt(-20)) == -5);
    CHECK(squarefree_part(BigInt(65536)) == 1);
    // product of two primes above the trial-division range
    BigInt big = BigInt(1000003) * 1000003 * 999983;
    CHECK(squarefree_part(big) == 999983);
    CHECK(squarefree_class(Rational(50, 3)) == 6);
    CHECK_THROWS(squarefree_part(BigInt(0)));
}

TEST_CASE("polynomial arithmetic")
{
    IntPoly f{1, 2, 1}; // (1 + x)^2
    IntPoly g{1, 1};
    CHECK(poly::mul(g, g) == f);
    auto q = poly::exact_divide(f, g);
    REQUIRE(q);
    CHECK(*q == g);
    CHECK_FALSE(poly::exact_divide(IntPoly{1, 0, 1}, g));
    CHECK(poly::degree(IntPoly{}) == -1);
    CHECK(poly::evaluate(f, Rational(1, 2)) == Rational(9, 4));
    CHECK(poly::pow(g, 3) == IntPoly{1, 3, 3, 1});
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(poly::cyclotomic(1) == IntPoly{-1, 1});
    CHECK(poly::cyclotomic(4) == IntPoly{1, 0, 1});
    CHECK(poly::cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
    for (int m = 1; m <= 70; ++m)
        CHECK(poly::degree(poly::cyclotomic(m)) == euler_phi(m));
    // x^n - 1 = prod_{d | n} Phi_d
    for (int n : {6, 12, 30}) {
        IntPoly prod{1};
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                prod = poly::mul(prod, poly::cyclotomic(d));
        IntPoly target(static_cast<std::size_t>(n + 1), 0);
        target[0] = -1;
        target[static_cast<std::size_t>(n)] = 1;
        CHECK(prod == target);
    }
}

TEST_CASE("Newton identities roundtrip")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        IntPoly p{1};
        for (int i = 0; i < 6; ++i)
            p = poly::mul(p, IntPoly{1, BigInt(dist(rng))});
        auto sums = poly::reciprocal_power_sums(p, 6);
        auto back = poly::coefficients_from_power_sums(sums);
        REQUIRE(back);
        auto trimmed = p;
        poly::trim(trimmed);
        auto got = *back;
        poly::trim(got);
        CHECK(got == trimmed);
    }
    // s_1 = 1, s_2 = 0 would need e_2 = 1/2
    std::vector<BigInt> bad{1, 0};
    CHECK_FALSE(poly::coefficients_from_power_sums(bad));
}

TEST_CASE("squarefree kernel and gcd")
{
    IntPoly f = poly::mul(poly::pow(IntPoly{-1, 1}, 3), IntPoly{1, 0, 1});
    auto k = poly::squarefree_kernel(f);
    CHECK(poly::degree(k) == 3);
    auto g = poly::rat_gcd(poly::to_rational(f), poly::to_rational(IntPoly{1, 0, 1}));
    CHECK(g == poly::RatPoly{1, 0, 1});
}

TEST_CASE("parse and format")
{
    CHECK(poly::parse("1,6,25") == IntPoly{1, 6, 25});
    CHECK(poly::parse("[1, -6, 25]") == IntPoly{1, -6, 25});
    CHECK(poly::format(IntPoly{1, 6, 25}) == "[1,6,25]");
    CHECK_THROWS_AS(poly::parse("1,x"), UsageError);
}
