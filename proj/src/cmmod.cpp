#include "k3arith/cmmod.hpp"

#include <algorithm>
#include <set>

#include "k3arith/error.hpp"

namespace k3::cmmod {

namespace {

void require_odd_primes(std::vector<std::int64_t> const & primes)
{
    for (auto p : primes) {
        if (p == 2)
            throw DomainError("p = 2 is a prime of bad reduction");
        if (!is_prime(p))
            throw UsageError(std::to_string(p) + " is not prime");
    }
}

int legendre(std::int64_t a, std::int64_t p)
{
    auto ctx = ff::FieldCtx::create(p, 1);
    return ff::quadratic_character(ff::FieldElement::from_int(ctx, a));
}

} // namespace

std::int64_t QSeries::operator[](std::size_t n) const
{
    if (n == 0 || n > coeffs.size())
        throw UsageError("coefficient b_" + std::to_string(n) + " outside the computed range 1.." +
                         std::to_string(coeffs.size()));
    return coeffs[n - 1];
}

QSeries eta4_pow6_expansion(std::size_t n)
{
    if (n < 1)
        throw UsageError("expansion length must be positive");
    // prod (1 - x^k)^6 up to x^m with q^(4m+1) the last term needed.
    const std::size_t m = (n - 1) / 4;
    std::vector<std::int64_t> f(m + 1, 0);
    f[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        for (int rep = 0; rep < 6; ++rep) {
            for (std::size_t i = m; i >= k; --i)
                f[i] -= f[i - k];
        }
    }
    QSeries out{"eta(4tau)^6", 3, 16, std::vector<std::int64_t>(n, 0)};
    for (std::size_t i = 0; i <= m; ++i)
        out.coeffs[4 * i] = f[i];
    return out;
}

int fermat_h(std::int64_t p)
{
    require_odd_primes({p});
    return 5 + 3 * legendre(-1, p) + 6 * (legendre(2, p) + legendre(-2, p));
}

std::int64_t fermat_count_prediction(std::int64_t p)
{
    const int h = fermat_h(p);
    const std::int64_t bp = eta4_pow6_expansion(static_cast<std::size_t>(p))[static_cast<std::size_t>(p)];
    return 1 + bp + h * p + p * p;
}

bool ModularityReport::ok() const
{
    return std::all_of(rows.begin(), rows.end(), [](auto const & r) { return r.agree(); });
}

std::vector<std::int64_t> ModularityReport::failed_primes() const
{
    std::vector<std::int64_t> out;
    for (auto const & r : rows) {
        if (!r.agree())
            out.push_back(r.p);
    }
    return out;
}

ModularityReport modularity_report(std::vector<std::int64_t> const & primes, count::CountOptions const & opts)
{
    require_odd_primes(primes);
    ModularityReport out;
    for (auto p : primes) {
        auto ctx = ff::FieldCtx::create(p, 1);
        out.rows.push_back({p, fermat_count_prediction(p), count::count_quartic(count::fermat_quartic(), ctx, opts)});
    }
    return out;
}

ModularityReport verify_modularity(std::vector<std::int64_t> const & primes, count::CountOptions const & opts)
{
    auto report = modularity_report(primes, opts);
    if (!report.ok()) {
        std::string list;
        for (auto p : report.failed_primes())
            list += (list.empty() ? "" : ", ") + std::to_string(p);
        throw VerificationError("Fermat count disagrees with the modular prediction at p = " + list);
    }
    return report;
}

Family dwork_family()
{
    return {"dwork",
            [](std::int64_t lambda) -> count::SurfaceModel { return count::PencilMember{count::Family::dwork, lambda}; },
            [](ff::FieldPtr const & ctx, std::int64_t lambda) { return count::dwork_is_singular(ctx, lambda); }};
}

std::vector<SieveCandidate> SieveResult::representatives() const
{
    std::vector<SieveCandidate> out;
    for (auto const & c : candidates) {
        if (c.lambda == c.orbit_representative)
            out.push_back(c);
    }
    return out;
}

SieveResult cm_sieve(Family const & family, QSeries const & target, std::vector<std::int64_t> const & primes,
                     count::CountOptions const & opts, int h_bound)
{
    require_odd_primes(primes);
    std::vector<std::int64_t> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    SieveResult out;
    for (auto p : sorted) {
        const std::int64_t bp = target[static_cast<std::size_t>(p)];
        auto ctx = ff::FieldCtx::create(p, 1);
        std::vector<std::int64_t> units{1, p - 1};
        if (p % 4 == 1) {
            const std::int64_t i = ctx->exp((p - 1) / 4);
            units.push_back(i);
            units.push_back(p - i);
        }
        bool any_smooth = false;
        for (std::int64_t lambda = 0; lambda < p; ++lambda) {
            if (family.singular(ctx, lambda))
                continue;
            any_smooth = true;
            const std::int64_t n = count::count_direct(family.member(lambda), ctx, opts);
            const std::int64_t diff = n - 1 - p * p - bp;
            if (diff % p != 0)
                continue;
            const std::int64_t h = diff / p;
            if (h > h_bound || h < -h_bound)
                continue;
            std::int64_t rep = lambda;
            for (auto u : units)
                rep = std::min(rep, mod(u * lambda, p));
            out.candidates.push_back({p, lambda, h, rep});
        }
        if (!any_smooth)
            out.warnings.push_back("every member of the " + family.name + " family is singular mod " +
                                   std::to_string(p));
    }
    return out;
}

std::optional<Rational> lift_parameter(std::vector<std::pair<std::int64_t, std::int64_t>> const & residues,
                                       BigInt const & height_bound)
{
    if (residues.empty())
        throw UsageError("no residues to lift");
    if (height_bound < 1)
        throw UsageError("height bound must be positive");
    std::set<std::int64_t> seen;
    BigInt m = 1;
    BigInt x = 0;
    for (auto const & [p, r] : residues) {
        if (!is_prime(p))
            throw UsageError(std::to_string(p) + " is not prime");
        if (!seen.insert(p).second)
            throw UsageError("prime " + std::to_string(p) + " appears twice");
        // x' = x + m * t with t = (r - x) / m mod p.
        const std::int64_t xm = static_cast<std::int64_t>(BigInt(x % p));
        const std::int64_t mm = static_cast<std::int64_t>(BigInt(m % p));
        const std::int64_t inv = mod(xgcd(mm, p).x, p);
        const std::int64_t t = static_cast<std::int64_t>(static_cast<__int128>(mod(r - xm, p)) * inv % p);
        x += m * t;
        m *= p;
    }
    if (2 * height_bound * height_bound > m)
        throw UsageError("height bound " + to_string(height_bound) + " exceeds sqrt(M/2) for M = " + to_string(m) +
                         "; the reconstruction would not be unique");

    // Half-extended Euclid on (M, x): stop at the first remainder <= H.
    BigInt r0 = m, r1 = x, s0 = 0, s1 = 1;
    while (r1 > height_bound) {
        BigInt qt = r0 / r1;
        BigInt r2 = r0 - qt * r1;
        BigInt s2 = s0 - qt * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    BigInt u = r1, v = s1;
    if (v < 0) {
        u = -u;
        v = -v;
    }
    if (v == 0 || v > height_bound || boost::multiprecision::gcd(u, v) != 1)
        return std::nullopt;
    return Rational(u, v);
}

} // namespace k3::cmmod
