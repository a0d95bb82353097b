#ifndef K3ARITH_CMMOD_HPP
#define K3ARITH_CMMOD_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3arith/count.hpp"
#include "k3arith/ff.hpp"
#include "k3arith/numtheory.hpp"

namespace k3::cmmod {

// sum_{n>=1} b_n q^n, truncated at N.
struct QSeries {
    std::string name;
    int weight = 0;
    int level = 0;
    std::vector<std::int64_t> coeffs; // coeffs[n - 1] = b_n

    std::size_t size() const { return coeffs.size(); }
    /// b_n; UsageError beyond the truncation.
    std::int64_t operator[](std::size_t n) const;
};

/// eta(4 tau)^6 = q prod_{n>=1} (1 - q^(4n))^6, weight 3, level 16.
QSeries eta4_pow6_expansion(std::size_t n);

/// 1 + b_p + h p + p^2 with h = 5 + 3 chi_-1(p) + 6 (chi_2(p) + chi_-2(p)).
/// DomainError for p = 2, UsageError if p is not prime.
std::int64_t fermat_count_prediction(std::int64_t p);
int fermat_h(std::int64_t p);

struct ModularityRow {
    std::int64_t p;
    std::int64_t predicted;
    std::int64_t counted;
    bool agree() const { return predicted == counted; }
};

struct ModularityReport {
    std::vector<ModularityRow> rows;
    bool ok() const;
    std::vector<std::int64_t> failed_primes() const;
};

/// Counts the Fermat quartic over each F_p and compares with the prediction.
/// Non-prime or even entries are rejected before any counting.
ModularityReport modularity_report(std::vector<std::int64_t> const & primes, count::CountOptions const & opts = {});

/// modularity_report, then VerificationError naming every failing prime.
ModularityReport verify_modularity(std::vector<std::int64_t> const & primes, count::CountOptions const & opts = {});

struct Family {
    std::string name;
    std::function<count::SurfaceModel(std::int64_t)> member;
    /// True when the member at parameter lambda is singular over the field.
    std::function<bool(ff::FieldPtr const &, std::int64_t)> singular;
};

Family dwork_family();

struct SieveCandidate {
    std::int64_t p;
    std::int64_t lambda;
    std::int64_t h;
    /// Least residue in the orbit of lambda under the 4th roots of unity in
    /// F_p (lambda -> i lambda when i exists, lambda -> -lambda always).
    std::int64_t orbit_representative;

    bool operator==(SieveCandidate const &) const = default;
};

struct SieveResult {
    std::vector<SieveCandidate> candidates; // sorted by (p, lambda)
    std::vector<std::string> warnings;

    std::vector<SieveCandidate> representatives() const;
};

/// Accepts (p, lambda) when N - 1 - p^2 - b_p = h p with |h| <= h_bound.
SieveResult cm_sieve(Family const & family, QSeries const & target, std::vector<std::int64_t> const & primes,
                     count::CountOptions const & opts = {}, int h_bound = 20);

/// CRT plus rational reconstruction: u/v with |u|, v <= height_bound and
/// u = v * x mod prod p. UsageError if 2 * height_bound^2 > prod p (the
/// reconstruction would not be unique) or primes repeat.
std::optional<Rational> lift_parameter(std::vector<std::pair<std::int64_t, std::int64_t>> const & residues,
                                       BigInt const & height_bound);

} // namespace k3::cmmod

#endif // K3ARITH_CMMOD_HPP
