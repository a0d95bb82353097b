#ifndef K3ARITH_ELLSURF_HPP
#define K3ARITH_ELLSURF_HPP

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Kodaira fibers, the Shioda-Tate formula and Kuwata's base-change family
// of elliptic K3 surfaces.
namespace k3::ellsurf {

enum class FiberKind { I, I_star, II, III, IV, IV_star, III_star, II_star };

/// I_n / I_n^* carry n >= 0; the other kinds ignore it (kept at 0).
struct KodairaFiberType {
    FiberKind kind = FiberKind::I;
    int n = 0;

    static KodairaFiberType In(int n) { return {FiberKind::I, n}; }
    static KodairaFiberType In_star(int n) { return {FiberKind::I_star, n}; }
    static KodairaFiberType of(FiberKind k) { return {k, 0}; }

    /// Number of components m_v.
    int components() const;
    /// Euler number e_v.
    int euler_number() const;
    /// Contributes to NS through m_v - 1 > 0.
    bool is_reducible() const { return components() > 1; }
    bool is_smooth() const { return kind == FiberKind::I && n == 0; }

    auto operator<=>(KodairaFiberType const &) const = default;
};

std::string to_string(KodairaFiberType const & t);
/// Accepts I0, I_3, I3*, I_0^*, II, III*, IV^*, ...
KodairaFiberType parse_fiber(std::string_view text);

/// Multiset of singular fibers (smooth I_0 entries are not stored).
class FiberConfiguration {
  public:
    FiberConfiguration() = default;
    FiberConfiguration(std::initializer_list<std::pair<KodairaFiberType, int>> items);

    void add(KodairaFiberType const & t, int count = 1);
    /// Ordered by decreasing Euler number, then type.
    std::vector<std::pair<KodairaFiberType, int>> entries() const;
    int count(KodairaFiberType const & t) const;
    bool empty() const { return fibers_.empty(); }
    /// Sum over fibers of (m_v - 1).
    int reducible_contribution() const;

    bool operator==(FiberConfiguration const &) const = default;

  private:
    std::map<KodairaFiberType, int> fibers_;
};

/// "2 II*, I_2, 2 I_1"
std::string to_string(FiberConfiguration const & config);

/// Sum of e_v; 24 for a K3 surface.
int euler_number(FiberConfiguration const & config);

/// Mordell-Weil rank r = rho - 2 - sum (m_v - 1). InconsistencyError if the
/// result would be negative; UsageError unless 2 <= rho <= 20.
int shioda_tate_rank(int rho, FiberConfiguration const & config);

/// Pullback of a II* fiber under a cyclic base change of degree n ramified
/// at that fiber (residue characteristic outside {2, 3}).
KodairaFiberType base_change_fiber(int n);

enum class Relation { not_isogenous, isogenous_no_cm, isogenous_cm };

std::string to_string(Relation r);
/// "not-isogenous", "isogenous-no-cm", "isogenous-cm" (underscores accepted).
Relation parse_relation(std::string_view text);

/// rho(Km(E x E')) = 18 + rank Hom(E, E').
int rho_kummer_product(Relation relation);

struct KuwataRow {
    int n;
    Relation relation;
    bool isomorphic;
    int rho;
    FiberConfiguration config;
    int mw_rank;
};

/// The elliptic K3 surface X^(n), the degree n base change of Inose's
/// fibration on the Shioda-Inose partner of Km(E x E'). Valid for 1 <= n <= 6;
/// isomorphic E = E' requires an isogenous relation. The j-invariants 0 and
/// 1728 carry extra automorphisms and are not covered by these rows.
KuwataRow kuwata_row(int n, Relation relation, bool isomorphic);

} // namespace k3::ellsurf

#endif // K3ARITH_ELLSURF_HPP
