#ifndef K3ARITH_NUMTHEORY_HPP
#define K3ARITH_NUMTHEORY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace k3 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

struct ExtendedGcd {
    std::int64_t g; // always >= 0
    std::int64_t x;
    std::int64_t y; // a*x + b*y == g
};
ExtendedGcd xgcd(std::int64_t a, std::int64_t b);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

/// Trial-division factorization, ascending primes.
std::vector<std::pair<std::int64_t, int>> factor_small(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// a^e, throwing UsageError on int64 overflow.
std::int64_t checked_pow(std::int64_t a, int e);

std::int64_t powmod(std::int64_t a, std::int64_t e, std::int64_t m);

/// Floor of sqrt for n >= 0.
std::int64_t isqrt(std::int64_t n);

/// Squarefree representative of n in Q*/(Q*)^2 restricted to integers:
/// sign(n) times the product of primes dividing n to odd order. n != 0.
BigInt squarefree_part(BigInt const & n);

/// Squarefree representative of a nonzero rational's square class.
BigInt squarefree_class(Rational const & x);

std::string to_string(BigInt const & n);
std::string to_string(Rational const & x);

} // namespace k3

#endif // K3ARITH_NUMTHEORY_HPP
