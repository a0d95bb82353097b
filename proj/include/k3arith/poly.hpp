#ifndef K3ARITH_POLY_HPP
#define K3ARITH_POLY_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "k3arith/numtheory.hpp"

// Dense univariate polynomials over Z and Q, coefficients low degree first.
namespace k3::poly {

using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<Rational>;

void trim(IntPoly & f);
void trim(RatPoly & f);

/// Degree of f; -1 for the zero polynomial.
int degree(IntPoly const & f);
int degree(RatPoly const & f);

IntPoly add(IntPoly const & f, IntPoly const & g);
IntPoly sub(IntPoly const & f, IntPoly const & g);
IntPoly mul(IntPoly const & f, IntPoly const & g);
IntPoly pow(IntPoly const & f, unsigned e);
IntPoly scale(IntPoly const & f, BigInt const & c);

/// Quotient of f by g if g divides f exactly in Z[x]; nullopt otherwise.
/// The leading coefficient of g must be a unit or divide cleanly.
std::optional<IntPoly> exact_divide(IntPoly const & f, IntPoly const & g);

Rational evaluate(IntPoly const & f, Rational const & x);

IntPoly derivative(IntPoly const & f);

RatPoly to_rational(IntPoly const & f);
RatPoly rat_mod(RatPoly const & f, RatPoly const & g);
RatPoly rat_div(RatPoly const & f, RatPoly const & g);
/// Monic gcd over Q.
RatPoly rat_gcd(RatPoly f, RatPoly g);

/// f / gcd(f, f') made monic: same roots, all simple.
RatPoly squarefree_kernel(IntPoly const & f);

/// m-th cyclotomic polynomial.
IntPoly cyclotomic(int m);

/// Power sums s_1..s_k of the reciprocal roots of P(T) = prod (1 - a_i T),
/// P(0) = 1 required.
std::vector<BigInt> reciprocal_power_sums(IntPoly const & p, std::size_t k);

/// Coefficients c_0 = 1, c_1..c_k of prod (1 - a_i T) from power sums
/// s_1..s_k via Newton's identities; nullopt when a division is inexact
/// (the sums cannot come from algebraic integers).
std::optional<IntPoly> coefficients_from_power_sums(std::span<const BigInt> s);

/// "1,6,25" or "[1, 6, 25]" (low degree first).
IntPoly parse(std::string_view text);
std::string format(IntPoly const & f);

} // namespace k3::poly

#endif // K3ARITH_POLY_HPP
