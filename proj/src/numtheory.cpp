#include "k3arith/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/multiprecision/miller_rabin.hpp>

#include "k3arith/error.hpp"

namespace k3 {

std::int64_t gcd(std::int64_t a, std::int64_t b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0)
        return 0;
    return (a / gcd(a, b)) * b;
}

ExtendedGcd xgcd(std::int64_t a, std::int64_t b)
{
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::int64_t tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quot * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d : {2, 3, 5, 7, 11, 13}) {
        if (n % d == 0)
            return n == d;
    }
    for (std::int64_t d = 17; d <= n / d; d += 2) {
        if (n % d == 0)
            return false;
    }
    return true;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n) {
        if (is_prime(n))
            out.push_back(n);
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> factor_small(std::int64_t n)
{
    std::vector<std::pair<std::int64_t, int>> out;
    if (n < 0)
        n = -n;
    for (std::int64_t d = 2; d <= n / d; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0)
            out.emplace_back(d, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t phi = n;
    for (auto [p, e] : factor_small(n))
        phi = phi / p * (p - 1);
    return phi;
}

std::int64_t checked_pow(std::int64_t a, int e)
{
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, a, &r))
            throw UsageError("integer power overflows 64 bits");
    }
    return r;
}

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m)
{
    __int128 base = mod(a, m);
    __int128 r = 1 % m;
    while (e > 0) {
        if (e & 1)
            r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        throw DomainError("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r)
        --r;
    while ((r + 1) <= n / (r + 1))
        ++r;
    return r;
}

namespace {

BigInt big_gcd(BigInt a, BigInt b)
{
    return boost::multiprecision::gcd(a, b);
}

// Brent's variant of Pollard rho; n odd composite, not a perfect power of
// a small prime (those were stripped by trial division).
BigInt pollard_brent(BigInt const & n)
{
    for (unsigned c = 1;; ++c) {
        BigInt y = 2, x, ys, g = 1, q = 1;
        std::size_t r = 1;
        const std::size_t m = 64;
        auto f = [&](BigInt const & v) { return (v * v + c) % n; };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i)
                y = f(y);
            std::size_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    BigInt diff = x > y ? BigInt(x - y) : BigInt(y - x);
                    q = q * diff % n;
                }
                g = big_gcd(q, n);
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                BigInt diff = x > ys ? BigInt(x - ys) : BigInt(ys - x);
                g = big_gcd(diff, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_into(BigInt const & n, std::map<BigInt, int> & out)
{
    if (n == 1)
        return;
    if (boost::multiprecision::miller_rabin_test(n, 32)) {
        out[n] += 1;
        return;
    }
    BigInt root = boost::multiprecision::sqrt(n);
    if (root * root == n) {
        factor_into(root, out);
        factor_into(root, out);
        return;
    }
    BigInt d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

BigInt squarefree_part(BigInt const & n)
{
    if (n == 0)
        throw DomainError("squarefree part of zero");
    BigInt m = n < 0 ? BigInt(-n) : n;
    BigInt result = 1;
    for (std::int64_t p = 2; p < 100000 && BigInt(p) * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e % 2 == 1)
            result *= p;
    }
    if (m > 1) {
        std::map<BigInt, int> rest;
        factor_into(m, rest);
        for (auto const & [p, e] : rest) {
            if (e % 2 == 1)
                result *= p;
        }
    }
    return n < 0 ? BigInt(-result) : result;
}

BigInt squarefree_class(Rational const & x)
{
    return squarefree_part(boost::multiprecision::numerator(x) * boost::multiprecision::denominator(x));
}

std::string to_string(BigInt const & n)
{
    return n.str();
}

std::string to_string(Rational const & x)
{
    return x.str();
}

} // namespace k3
