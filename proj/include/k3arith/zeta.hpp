#ifndef K3ARITH_ZETA_HPP
#define K3ARITH_ZETA_HPP

#include <optional>
#include <string>
#include <vector>

#include "k3arith/count.hpp"
#include "k3arith/ff.hpp"
#include "k3arith/poly.hpp"

// From point counts to P_2(T), Picard number bounds and Artin-Tate classes.
namespace k3::zeta {

constexpr int kB2 = 22;

/*
 * P_2(T) = prod (1 - alpha_i T), alpha_i the Frobenius eigenvalues on H^2.
 * A polynomial of degree below `degree` is a known factor only; the rest is
 * missing and counted as slack by picard_upper_bound.
 */
struct FrobeniusPoly {
    std::int64_t q = 0;
    poly::IntPoly coeffs;
    int degree = kB2;

    bool complete() const { return poly::degree(coeffs) == degree; }
    int missing_degree() const { return degree - poly::degree(coeffs); }
};

/// t_r = sum alpha_i^r over F_{q^r}, r = 1..k.
struct TraceVector {
    std::int64_t q = 0;
    std::vector<BigInt> traces;
};

/// t_r = N_r - 1 - q^(2r). Records must share p and surface and cover
/// r = 1..k. DataError if some |t_r| > 22 q^r.
TraceVector traces_from_counts(std::vector<count::CountRecord> const & counts);

/// Power sums of the reciprocal roots of P, r = 1..k.
TraceVector traces_of(FrobeniusPoly const & p, std::size_t k);

/// Sign e with q^D T^D P(1/(q^2 T)) = e P(T), D = deg P; nullopt if neither.
std::optional<int> functional_equation_sign(poly::IntPoly const & p, std::int64_t q);

/// Every reciprocal root has |alpha| = q to relative tolerance tol.
bool roots_on_circle(poly::IntPoly const & p, std::int64_t q, double tol = 1e-6);

/// Completes P_2 from traces: Newton's identities give the low coefficients
/// of P / known_factor, the functional equation the rest. Both signs are
/// tried and filtered by the root test and by any surplus traces.
/// IncompletenessError when too few traces (or the sign stays ambiguous),
/// DataError when no candidate survives.
FrobeniusPoly p2_from_traces(TraceVector const & tr, std::optional<poly::IntPoly> const & known_factor = std::nullopt,
                             int degree = kB2);

/// prod (1 - alpha T) for eigenvalues in Z[i]; VerificationError if the
/// product is not in Z[T].
FrobeniusPoly p2_from_eigenvalues(std::vector<ff::GaussianInteger> const & eigenvalues, std::int64_t q);

struct CyclotomicFactor {
    int m;
    int multiplicity;
    bool operator==(CyclotomicFactor const &) const = default;
};

struct PicardBound {
    /// Upper bound for the geometric Picard number: root-of-unity roots of
    /// the known part plus the slack.
    int bound = 0;
    int known_part = 0;
    int slack = 0;
    std::vector<CyclotomicFactor> factors;
    /// For complete P the unit roots number 22 minus an even count.
    bool parity_ok = true;
    std::string note;
};

/// R(x) = q^D P(x/q) reversed; counts roots of unity by exact trial division
/// by Phi_m for every m with phi(m) <= 22.
PicardBound picard_upper_bound(FrobeniusPoly const & p);

struct ArtinTate {
    Rational value;
    BigInt square_class;
};

/// q * P(T) / (1 - qT)^rho at T = 1/q. MultiplicityError if (1 - qT)^rho
/// does not divide P or if the quotient vanishes at 1/q.
ArtinTate artin_tate_discriminant(FrobeniusPoly const & p, int rho);

struct Combined {
    int bound;
    /// Set when both bounds exceed 2 and the classes disagree; the drop by
    /// one is then not applied and the plain minimum is returned.
    bool extension_flagged;
};

Combined van_luijk_combine(int b1, BigInt const & c1, int b2, BigInt const & c2);

} // namespace k3::zeta

#endif // K3ARITH_ZETA_HPP
