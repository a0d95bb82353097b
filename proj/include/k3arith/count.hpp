#ifndef K3ARITH_COUNT_HPP
#define K3ARITH_COUNT_HPP

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "k3arith/ff.hpp"

// Point counts of quartic surfaces and double sextics over finite fields.
namespace k3::count {

// Coefficients follow monomial_order(): exponent vectors in descending
// lexicographic order, x0^4, x0^3 x1, x0^3 x2, ..., x3^4.
struct Quartic {
    std::array<std::int64_t, 35> coeffs{};
};

// w^2 = F(x, y, z) with F of degree 6, in the weighted projective space
// P(1,1,1,3).
struct DoubleSextic {
    std::array<std::int64_t, 28> coeffs{};
};

// a0 x0^4 + a1 x1^4 + a2 x2^4 + a3 x3^4
struct DiagonalQuartic {
    std::array<std::int64_t, 4> coeffs{1, 1, 1, 1};
};

enum class Family { dwork };

// Dwork pencil: x0^4 + x1^4 + x2^4 + x3^4 = lambda x0 x1 x2 x3.
struct PencilMember {
    Family family = Family::dwork;
    std::int64_t lambda = 0;
};

using SurfaceModel = std::variant<Quartic, DoubleSextic, DiagonalQuartic, PencilMember>;

using Exponents = std::vector<int>;

/// Monomials of the given degree in nvars variables, descending lex order.
std::vector<Exponents> monomial_order(int nvars, int degree);
std::size_t monomial_index(Exponents const & exps);

Quartic to_quartic(DiagonalQuartic const & s);
Quartic to_quartic(PencilMember const & s);
Quartic fermat_quartic();

/// Stable text form: model tag plus coefficients in monomial order.
/// Diagonal and pencil models serialize as the quartic they define.
std::string canonical_serialization(SurfaceModel const & s);
/// 64-bit FNV-1a of the canonical serialization, 16 hex digits.
std::string surface_hash(SurfaceModel const & s);

struct CountOptions {
    unsigned jobs = 1;
    /// Work items per thread; 0 picks a default. Never changes the result.
    std::size_t chunks_per_job = 0;
};

/// #{F = 0} in P^3(F_q). Enumerates the affine strata x_k = 1,
/// x_0 = ... = x_{k-1} = 0, so every projective point is visited once.
std::int64_t count_quartic(Quartic const & s, ff::FieldPtr const & ctx, CountOptions const & opts = {});

/// Same count for a quartic whose 35 coefficients lie in F_q itself.
std::int64_t count_quartic(std::vector<ff::FieldElement> const & coeffs, CountOptions const & opts = {});

/// sum over P in P^2(F_q) of 1 + chi(F(P)), chi(0) = 0. q odd.
std::int64_t count_double_sextic(DoubleSextic const & s, ff::FieldPtr const & ctx, CountOptions const & opts = {});

struct DiagonalCount {
    std::int64_t count = 0;
    /// Frobenius eigenvalues on H^2: the hyperplane class q first, then the
    /// 21 eigenvalues on primitive cohomology.
    std::vector<ff::GaussianInteger> eigenvalues;
};

/// Count plus Frobenius eigenvalues of a diagonal quartic via Jacobi sums
/// of quartic characters. UnsupportedError if p divides 4 * a0 a1 a2 a3.
DiagonalCount count_diagonal_quartic_jacobi(DiagonalQuartic const & s, ff::FieldPtr const & ctx);
/// Same for coefficients in F_q^*.
DiagonalCount count_diagonal_quartic_jacobi(std::array<ff::FieldElement, 4> const & coeffs);

/// Direct count of any model (diagonal and pencil models as quartics).
std::int64_t count_direct(SurfaceModel const & s, ff::FieldPtr const & ctx, CountOptions const & opts = {});

/// |N - 1 - q^2| <= 22 q.
bool weil_bound_holds(std::int64_t n, std::int64_t q);

/// Smoothness where it is decidable from the family alone (diagonal: p does
/// not divide 4 * prod a_i; Dwork: p odd and lambda^4 != 256 mod p).
/// nullopt for general quartics and sextics.
std::optional<bool> known_smooth(SurfaceModel const & s, std::int64_t p);

bool dwork_is_singular(ff::FieldPtr const & ctx, std::int64_t lambda);

/// Jacobian criterion at F_q-rational points of a quartic: true if some
/// point on the surface has all four partials vanishing. This only sees
/// rational singularities.
bool has_rational_singular_point(Quartic const & s, ff::FieldPtr const & ctx);

struct CountRecord {
    std::string surface;
    std::int64_t p = 0;
    int r = 0;
    std::int64_t count = 0;

    std::int64_t q() const;
    bool operator==(CountRecord const &) const = default;
};

/*
 * In-memory count store keyed by (surface hash, p, r). Inserting a second,
 * different count for an existing key is an IntegrityError. Safe for
 * concurrent use.
 */
class CountCache {
  public:
    std::optional<std::int64_t> lookup(std::string const & surface, std::int64_t p, int r) const;
    /// Returns true when the record was new.
    bool insert(CountRecord const & rec);
    std::vector<CountRecord> records() const;
    std::size_t size() const;

    std::size_t hits() const;
    std::size_t misses() const;
    void note_hit() const;
    void note_miss() const;

  private:
    using Key = std::tuple<std::string, std::int64_t, int>;
    mutable std::mutex mu_;
    std::map<Key, std::int64_t> store_;
    mutable std::size_t hits_ = 0;
    mutable std::size_t misses_ = 0;
};

struct TowerOptions {
    CountOptions count;
    bool force = false;
    /// Refuse towers whose estimated field operations exceed this.
    double work_limit = 5e9;
    /// Recount cached entries and compare instead of trusting them.
    bool verify_cache = false;
};

/// Rough number of field operations for one direct count over F_q.
double estimated_work(SurfaceModel const & s, std::int64_t q);

/// Counts over F_{p^1}, ..., F_{p^r_max}. Diagonal quartics use the Jacobi
/// path when p is good; known-smooth surfaces are checked against the Weil
/// bound (DataError on violation). InfeasibleError unless forced when the
/// estimate exceeds work_limit.
std::vector<CountRecord> count_tower(SurfaceModel const & s, std::int64_t p, int r_max, TowerOptions const & opts = {},
                                     CountCache * cache = nullptr);

} // namespace k3::count

#endif // K3ARITH_COUNT_HPP
