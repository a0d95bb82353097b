#ifndef K3ARITH_FF_HPP
#define K3ARITH_FF_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "k3arith/numtheory.hpp"

// Exact arithmetic in F_q, q = p^r, with multiplicative characters and
// Jacobi sums valued in cyclotomic integer rings.
namespace k3::ff {

/*
 * F_{p^r} realized as F_p[x]/(f) for a monic irreducible f of degree r.
 * Elements are coefficient vectors of length r; they are also encoded as
 * integers index = sum c_i p^i in [0, q), which is what the counting code
 * iterates over.
 *
 * A context is immutable once built and is shared (shared_ptr<const>)
 * between all of its elements. For q <= kTableLimit the constructor also
 * builds discrete log / Zech log tables for a fixed primitive root.
 */
class FieldCtx {
  public:
    static constexpr std::int64_t kTableLimit = std::int64_t{1} << 22;
    static constexpr std::int64_t kZeroLog = -1;

    /// Uses the least monic irreducible of degree r, ordering candidates
    /// by their encoded lower coefficients.
    static std::shared_ptr<const FieldCtx> create(std::int64_t p, int r = 1);

    /// Explicit modulus, monic, low degree first (size r + 1). Verified
    /// irreducible.
    static std::shared_ptr<const FieldCtx> create(std::int64_t p, std::vector<std::int64_t> modulus);

    std::int64_t p() const { return p_; }
    int degree() const { return r_; }
    std::int64_t q() const { return q_; }
    std::vector<std::int64_t> const & modulus() const { return modulus_; }

    bool operator==(FieldCtx const & o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

    /// Encoded index of the fixed primitive root g (smallest index of
    /// multiplicative order q - 1).
    std::int64_t generator_index() const { return generator_; }

    bool has_tables() const { return !exp_.empty(); }
    /// Discrete log base g of a nonzero encoded element; kZeroLog for 0.
    std::int64_t log(std::int64_t index) const;
    std::int64_t exp(std::int64_t k) const;
    /// log(1 + g^k), or kZeroLog when 1 + g^k = 0.
    std::int64_t zech(std::int64_t k) const;
    /// Raw tables for hot loops: exp over [0, q-1), log and zech with
    /// kZeroLog for zero.
    std::span<const std::int32_t> exp_table() const { return exp_; }
    std::span<const std::int32_t> log_table() const { return log_; }
    std::span<const std::int32_t> zech_table() const { return zech_; }

    std::int64_t encode(std::span<const std::int64_t> coeffs) const;
    std::vector<std::int64_t> decode(std::int64_t index) const;

    // Coefficient-vector arithmetic, inputs reduced and of length r.
    std::vector<std::int64_t> add(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;
    std::vector<std::int64_t> mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;
    std::int64_t mul_index(std::int64_t a, std::int64_t b) const;
    std::int64_t add_index(std::int64_t a, std::int64_t b) const;

  private:
    FieldCtx(std::int64_t p, std::vector<std::int64_t> modulus);
    void build_tables();

    std::int64_t p_;
    int r_;
    std::int64_t q_;
    std::vector<std::int64_t> modulus_;
    std::int64_t generator_ = 0;
    std::vector<std::int32_t> exp_;
    std::vector<std::int32_t> log_;
    std::vector<std::int32_t> zech_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

class FieldElement {
  public:
    FieldElement(FieldPtr ctx, std::vector<std::int64_t> coeffs);

    static FieldElement zero(FieldPtr ctx);
    static FieldElement one(FieldPtr ctx);
    static FieldElement from_int(FieldPtr ctx, std::int64_t n);
    static FieldElement from_index(FieldPtr ctx, std::int64_t index);

    FieldPtr const & ctx() const { return ctx_; }
    std::vector<std::int64_t> const & coeffs() const { return c_; }
    std::int64_t index() const { return ctx_->encode(c_); }
    bool is_zero() const;

    FieldElement operator+(FieldElement const & o) const;
    FieldElement operator-(FieldElement const & o) const;
    FieldElement operator-() const;
    FieldElement operator*(FieldElement const & o) const;
    bool operator==(FieldElement const & o) const;

    /// DomainError for zero.
    FieldElement inverse() const;
    FieldElement pow(BigInt e) const;
    /// a -> a^p.
    FieldElement frobenius() const;

  private:
    void require_same_field(FieldElement const & o) const;

    FieldPtr ctx_;
    std::vector<std::int64_t> c_;
};

/*
 * Element of Z[zeta_m] stored in the power basis 1, zeta, ..., zeta^(phi(m)-1),
 * i.e. reduced modulo the m-th cyclotomic polynomial. Equality is therefore
 * exact equality of algebraic integers.
 */
class CyclotomicInteger {
  public:
    explicit CyclotomicInteger(int m);

    static CyclotomicInteger integer(int m, std::int64_t n);
    static CyclotomicInteger root_of_unity(int m, std::int64_t k);
    /// Sum_k counts[k] zeta^k for a length-m exponent histogram.
    static CyclotomicInteger from_exponent_counts(int m, std::span<const std::int64_t> counts);

    int order() const { return m_; }
    std::vector<std::int64_t> const & coeffs() const { return c_; }

    CyclotomicInteger operator+(CyclotomicInteger const & o) const;
    CyclotomicInteger operator-(CyclotomicInteger const & o) const;
    CyclotomicInteger operator-() const;
    CyclotomicInteger operator*(CyclotomicInteger const & o) const;
    bool operator==(CyclotomicInteger const & o) const;

    /// Complex conjugation zeta -> zeta^-1.
    CyclotomicInteger conj() const;
    /// Embedding Z[zeta_m] -> Z[zeta_n], m | n.
    CyclotomicInteger lift(int n) const;

    bool is_integer() const;
    std::int64_t as_integer() const;
    std::complex<double> to_complex() const;

  private:
    CyclotomicInteger(int m, std::shared_ptr<const std::vector<std::int64_t>> phi);
    static CyclotomicInteger reduce(int m, std::shared_ptr<const std::vector<std::int64_t>> phi,
                                    std::vector<std::int64_t> full);

    int m_;
    std::shared_ptr<const std::vector<std::int64_t>> phi_;
    std::vector<std::int64_t> c_;
};

/// Z[i] as the m = 4 cyclotomic ring.
using GaussianInteger = CyclotomicInteger;
GaussianInteger gaussian(std::int64_t re, std::int64_t im);

/*
 * chi(g^k) = zeta_m^(exponent * k) for the context's fixed primitive root g,
 * with chi(0) = 0. m must divide q - 1.
 */
class MultChar {
  public:
    MultChar(FieldPtr ctx, int m, int exponent);

    FieldPtr const & ctx() const { return ctx_; }
    /// The m with values in mu_m (not necessarily the exact order).
    int modulus() const { return m_; }
    int exponent() const { return e_; }
    /// Exact order of the character.
    int order() const;
    bool is_trivial() const { return e_ % m_ == 0; }

    /// k with chi(x) = zeta_m^k, nullopt for x = 0.
    std::optional<int> value_exponent(FieldElement const & x) const;
    std::optional<int> value_exponent_at(std::int64_t index) const;
    /// chi(x) in Z[zeta_m].
    CyclotomicInteger value(FieldElement const & x) const;

    MultChar operator*(MultChar const & o) const;
    MultChar lift(int n) const;

  private:
    FieldPtr ctx_;
    int m_;
    int e_;
    std::vector<std::int64_t> root_powers_; // index of h^j, h = g^((q-1)/m)
};

/// Legendre symbol in F_q: a^((q-1)/2) read as -1, 0 or 1. UnsupportedError
/// for even q.
int quadratic_character(FieldElement const & a);

/// J(chi1, chi2) = sum_{x != 0,1} chi1(x) chi2(1 - x) in Z[zeta_lcm(m1,m2)].
/// DomainError unless chi1, chi2 and chi1*chi2 are all nontrivial.
CyclotomicInteger jacobi_sum(MultChar const & chi1, MultChar const & chi2);

} // namespace k3::ff

#endif // K3ARITH_FF_HPP
