#include <doctest.h>

#include <random>

#include "k3arith/cmmod.hpp"
#include "k3arith/count.hpp"
#include "k3arith/error.hpp"

using namespace k3;
using namespace k3::cmmod;

namespace {

// Dense truncated product q * prod (1 - q^(4n))^6, one factor at a time.
std::vector<std::int64_t> eta_oracle(std::size_t n)
{
    std::vector<std::int64_t> s(n, 0); // s[k] = coefficient of q^(k+1)
    s[0] = 1;
    for (std::size_t m = 4; m < n; m += 4)
        for (int rep = 0; rep < 6; ++rep)
            for (std::size_t k = n; k-- > m;)
                s[k] -= s[k - m];
    return s;
}

// CM description: for p = a^2 + b^2 with a odd, b_p = 2 (a^2 - b^2).
std::int64_t cm_coefficient(std::int64_t p)
{
    if (p % 4 == 3)
        return 0;
    for (std::int64_t a = 1; a * a < p; a += 2) {
        std::int64_t b2 = p - a * a;
        std::int64_t b = isqrt(b2);
        if (b * b == b2)
            return 2 * (a * a - b2);
    }
    FAIL("no two-square decomposition");
    return 0;
}

int chi_m4(std::int64_t n)
{
    return n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1);
}

} // namespace

TEST_CASE("eta(4 tau)^6 expansion")
{
    auto s = eta4_pow6_expansion(400);
    CHECK(s.weight == 3);
    CHECK(s.level == 16);
    CHECK(s[1] == 1);
    CHECK(s[5] == -6);
    CHECK(s[9] == 9);
    CHECK(s[13] == 10);
    CHECK(s[17] == -30);
    CHECK(s.coeffs == eta_oracle(400));
    for (std::size_t n = 1; n <= 400; ++n)
        if (n % 4 != 1)
            CHECK(s[n] == 0);
    CHECK_THROWS_AS(s[401], UsageError);
    CHECK_THROWS_AS(s[0], UsageError);
}

TEST_CASE("Hecke structure of the expansion")
{
    const std::size_t n = 3000;
    auto s = eta4_pow6_expansion(n);
    for (std::int64_t p = 3; p < static_cast<std::int64_t>(n); p += 2)
        if (is_prime(p))
            REQUIRE(s[static_cast<std::size_t>(p)] == cm_coefficient(p));
    // multiplicative on coprime indices
    for (std::size_t a = 1; a < 60; a += 4)
        for (std::size_t b = 1; a * b <= n && b < 60; b += 4)
            if (std::gcd(a, b) == 1)
                CHECK(s[a * b] == s[a] * s[b]);
    // b_{p^2} = b_p^2 - chi(p) p^2
    for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
        auto pu = static_cast<std::size_t>(p);
        CHECK(s[pu * pu] == s[pu] * s[pu] - chi_m4(p) * p * p);
    }
}

TEST_CASE("Fermat count predictions")
{
    CHECK(fermat_h(5) == -4);
    CHECK(fermat_h(3) == 2);
    CHECK(fermat_count_prediction(5) == 0);
    CHECK(fermat_count_prediction(3) == 16);
    CHECK(fermat_count_prediction(13) == 128);
    CHECK_THROWS_AS(fermat_count_prediction(2), DomainError);
    CHECK_THROWS_AS(fermat_count_prediction(9), UsageError);
}

TEST_CASE("modularity of the Fermat quartic for p <= 37")
{
    std::vector<std::int64_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    auto rep = verify_modularity(primes);
    CHECK(rep.ok());
    REQUIRE(rep.rows.size() == primes.size());
    for (auto const & row : rep.rows)
        CHECK(row.counted == count::count_quartic(count::fermat_quartic(), ff::FieldCtx::create(row.p)));
    CHECK(modularity_report({}).rows.empty());
    CHECK_THROWS_AS(modularity_report({3, 2, 5}), DomainError);
    CHECK_THROWS_AS(modularity_report({3, 15}), UsageError);
}

TEST_CASE("modularity failures name the prime")
{
    ModularityReport r{{{3, 16, 16}, {5, 0, 1}}};
    CHECK_FALSE(r.ok());
    CHECK(r.failed_primes() == std::vector<std::int64_t>{5});
}

TEST_CASE("CM sieve on the Dwork pencil")
{
    auto family = dwork_family();
    auto target = eta4_pow6_expansion(100);
    auto res = cm_sieve(family, target, {5, 13, 17});
    for (std::int64_t p : {5, 13, 17}) {
        bool found = std::any_of(res.candidates.begin(), res.candidates.end(),
                                 [&](auto const & c) { return c.p == p && c.lambda == 0; });
        CHECK(found);
    }
    for (auto const & c : res.candidates) {
        CHECK(std::abs(c.h) <= 20);
        auto ctx = ff::FieldCtx::create(c.p);
        auto n = count::count_direct(family.member(c.lambda), ctx);
        CHECK(n - 1 - c.p * c.p - target[static_cast<std::size_t>(c.p)] == c.h * c.p);
        CHECK_FALSE(family.singular(ctx, c.lambda));
        CHECK(c.orbit_representative <= c.lambda);
    }
    CHECK(std::is_sorted(res.candidates.begin(), res.candidates.end(),
                         [](auto const & x, auto const & y) { return std::tie(x.p, x.lambda) < std::tie(y.p, y.lambda); }));

    // family member at 0 is the Fermat quartic
    for (std::int64_t p : {3, 5, 7, 11})
        CHECK(count::count_direct(family.member(0), ff::FieldCtx::create(p)) ==
              count::count_quartic(count::fermat_quartic(), ff::FieldCtx::create(p)));

    // shifting b_13 by one drops lambda = 0 at 13 only
    auto shifted = target;
    shifted.coeffs[12] += 1;
    auto res2 = cm_sieve(family, shifted, {5, 13});
    auto has = [&](std::int64_t p) {
        return std::any_of(res2.candidates.begin(), res2.candidates.end(),
                           [&](auto const & c) { return c.p == p && c.lambda == 0; });
    };
    CHECK(has(5));
    CHECK_FALSE(has(13));
}

TEST_CASE("sieve symmetry and warnings")
{
    // lambda -> -lambda and (when i exists) lambda -> i lambda keep the count
    auto family = dwork_family();
    auto res = cm_sieve(family, eta4_pow6_expansion(40), {13});
    for (auto const & c : res.candidates) {
        bool neg = std::any_of(res.candidates.begin(), res.candidates.end(),
                               [&](auto const & d) { return d.lambda == mod(-c.lambda, 13); });
        CHECK(neg);
    }
    CHECK_THROWS_AS(cm_sieve(family, eta4_pow6_expansion(10), {2}), DomainError);
    Family degenerate{"degenerate", family.member, [](ff::FieldPtr const &, std::int64_t) { return true; }};
    auto none = cm_sieve(degenerate, eta4_pow6_expansion(10), {5});
    CHECK(none.candidates.empty());
    CHECK(none.warnings.size() == 1);
}

TEST_CASE("lifting residues to small rationals")
{
    CHECK(lift_parameter({{7, 4}, {11, 6}}, 6) == Rational(1, 2));
    CHECK_THROWS_AS(lift_parameter({{7, 4}, {11, 6}}, 8), UsageError);
    CHECK(lift_parameter({{5, 0}, {13, 0}, {17, 0}}, 5) == Rational(0));
    CHECK_FALSE(lift_parameter({{101, 37}, {103, 58}}, 3).has_value());
    CHECK_THROWS_AS(lift_parameter({{7, 1}, {7, 1}}, 1), UsageError);
    CHECK_THROWS_AS(lift_parameter({}, 1), UsageError);

    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::int64_t> num(-500, 500), den(1, 500);
    std::vector<std::int64_t> primes{101, 103, 107};
    for (int t = 0; t < 200; ++t) {
        Rational x(num(rng), den(rng));
        std::vector<std::pair<std::int64_t, std::int64_t>> res;
        bool ok = true;
        for (auto p : primes) {
            BigInt d = denominator(x) % p;
            if (d == 0) {
                ok = false;
                break;
            }
            auto inv = powmod(static_cast<std::int64_t>(d), p - 2, p);
            auto n = mod(static_cast<std::int64_t>(numerator(x) % p), p);
            res.push_back({p, n * inv % p});
        }
        if (!ok)
            continue;
        CHECK(lift_parameter(res, 500) == x);
    }
}
