#ifndef K3ARITH_SINGK3_HPP
#define K3ARITH_SINGK3_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "k3arith/bqf.hpp"
#include "k3arith/numtheory.hpp"

namespace k3::singk3 {

using Complex = std::complex<double>;

/*
 * x + y sqrt(r) with x, y rational and r a negative squarefree integer, so
 * that two such numbers are equal iff their (x, y, r) agree. Constructing
 * from a non-squarefree radicand pulls the square factor into y.
 */
class QuadraticIrrational {
  public:
    QuadraticIrrational(Rational x, Rational y, std::int64_t radicand);

    Rational const & rational_part() const { return x_; }
    Rational const & radical_part() const { return y_; }
    std::int64_t radicand() const { return r_; }

    QuadraticIrrational operator+(QuadraticIrrational const & o) const;
    QuadraticIrrational operator-(QuadraticIrrational const & o) const;
    QuadraticIrrational operator*(QuadraticIrrational const & o) const;
    QuadraticIrrational operator*(Rational const & s) const;
    bool operator==(QuadraticIrrational const & o) const = default;
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    Complex approx() const;
    std::string to_string() const;

  private:
    void require_same_field(QuadraticIrrational const & o) const;

    Rational x_;
    Rational y_;
    std::int64_t r_;
};

/// Periods of E = C/(Z + tau Z) and E' = C/(Z + tau' Z) whose product has
/// transcendental lattice given by the form.
struct PeriodPair {
    QuadraticIrrational tau;
    QuadraticIrrational tau_prime;
};

PeriodPair shioda_mitani_periods(bqf::BinaryQuadraticForm const & f);

/// Inverse of shioda_mitani_periods. DomainError if the periods do not come
/// from an integral positive definite form.
bqf::BinaryQuadraticForm form_from_periods(PeriodPair const & periods);

/// Even positive definite rank-2 lattice with Gram matrix (2a b; b 2c).
struct TranscendentalLattice {
    bqf::BinaryQuadraticForm form;
    bool oriented = true;

    Eigen::Matrix<std::int64_t, 2, 2> gram() const;
    /// det of the Gram matrix, i.e. -discriminant.
    std::int64_t determinant() const;
    bool operator==(TranscendentalLattice const &) const = default;
};

/// T(Km(A)) = T(A)[2].
TranscendentalLattice kummer_double(TranscendentalLattice const & t);

/// T(X^(n)) = T(X)[n] for Kuwata's base changes, n in 1..6.
TranscendentalLattice base_change_lattice(TranscendentalLattice const & t, int n);

/// Exact integer coefficients c_{-1}, c_0, c_1, ... of j = 1/q + 744 + ...,
/// returned with index shifted by one (result[0] = c_{-1} = 1).
std::vector<BigInt> j_coefficients(std::size_t count);

/// Klein's j by q-expansion after moving tau into the standard fundamental
/// domain. Truncation is chosen from |q| so that the tail is below
/// tolerance * max(1, |1/q|); PrecisionError if that is impossible in
/// long double.
Complex j_invariant(Complex tau, double tolerance = 1e-12);

/// tau moved into |Re| <= 1/2, |tau| >= 1.
Complex to_fundamental_domain(Complex tau);

struct InosePencil {
    Complex A;
    Complex B;
    /// y^2 = x^3 + a4(t) x + a6(t); coefficient lists in t, low degree first.
    std::vector<Complex> a4;
    std::vector<Complex> a6;
};

/// A^3 = j j' / 12^6 and B^2 = (1 - j/12^3)(1 - j'/12^3) with principal
/// branches (arg A in (-pi/3, pi/3], arg B in (-pi/2, pi/2]).
InosePencil inose_coefficients(Complex j1, Complex j2);

/// [H(d) : Q(sqrt d)] = h(d).
std::int64_t ring_class_degree(std::int64_t d);

/// Necessary condition for NS of a singular K3 surface of discriminant d to
/// be generated over L: H(d) must sit inside L(sqrt d), so
/// [L(sqrt d) : Q] has to be a multiple of [H(d) : Q] = 2 h(d).
/// Galois structure is not examined.
bool ns_field_check(std::int64_t d, std::int64_t degree_l_sqrt_d_over_q);

} // namespace k3::singk3

#endif // K3ARITH_SINGK3_HPP
