// Acceptance checks 1-8. One PASS/FAIL line each; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "k3arith/bqf.hpp"
#include "k3arith/cli/dispatch.hpp"
#include "k3arith/cmmod.hpp"
#include "k3arith/count.hpp"
#include "k3arith/ellsurf.hpp"
#include "k3arith/error.hpp"
#include "k3arith/singk3.hpp"
#include "k3arith/zeta.hpp"

using namespace k3;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, std::string const & what)
    {
        if (!cond) {
            ok = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

poly::IntPoly lin(std::int64_t c)
{
    return {1, BigInt(c)};
}

int legendre(std::int64_t a, std::int64_t p)
{
    a = mod(a, p);
    if (a == 0)
        return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------

Outcome class_number_one()
{
    Outcome o;
    std::vector<std::int64_t> expected{-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
    std::ostringstream out, err;
    int code = cli::dispatch({"bqf", "h1list", "--bound", "200"}, out, err);
    o.require(code == 0, "k3 bqf h1list exited with " + std::to_string(code));
    if (code == 0) {
        auto got = nlohmann::json::parse(out.str())["results"]["discriminants"].get<std::vector<std::int64_t>>();
        o.require(got == expected, "CLI list differs");
    }
    o.require(bqf::class_number_one_discriminants(200) == expected, "library list differs");
    return o;
}

Outcome kuwata_table()
{
    using ellsurf::FiberKind;
    using ellsurf::KodairaFiberType;
    using ellsurf::Relation;
    Outcome o;
    struct Row {
        KodairaFiberType special;
        int iso20, iso19, non20, non19, generic;
    };
    const Row table[6] = {
        {KodairaFiberType::of(FiberKind::II_star), 1, 0, 2, 1, 0},
        {KodairaFiberType::of(FiberKind::IV_star), 4, 3, 6, 5, 4},
        {KodairaFiberType::In_star(0), 7, 6, 10, 9, 8},
        {KodairaFiberType::of(FiberKind::IV), 10, 9, 14, 13, 12},
        {KodairaFiberType::of(FiberKind::II), 13, 12, 18, 17, 16},
        {KodairaFiberType::In(0), 12, 11, 18, 17, 16},
    };
    int cells = 0;
    for (int n = 1; n <= 6; ++n) {
        Row const & row = table[n - 1];
        ellsurf::FiberConfiguration iso, non;
        iso.add(row.special, 2);
        iso.add(KodairaFiberType::In(2), n);
        iso.add(KodairaFiberType::In(1), 2 * n);
        non.add(row.special, 2);
        non.add(KodairaFiberType::In(1), 4 * n);
        auto check = [&](Relation rel, bool isomorphic, ellsurf::FiberConfiguration const & cfg, int rank) {
            auto got = ellsurf::kuwata_row(n, rel, isomorphic);
            const std::string tag = "n=" + std::to_string(n) + " " + ellsurf::to_string(rel) + (isomorphic ? " iso" : "");
            o.require(got.config == cfg, tag + ": configuration " + ellsurf::to_string(got.config));
            o.require(got.mw_rank == rank, tag + ": rank " + std::to_string(got.mw_rank));
            o.require(ellsurf::euler_number(got.config) == 24, tag + ": Euler number");
            ++cells;
        };
        check(Relation::isogenous_cm, true, iso, row.iso20);
        check(Relation::isogenous_no_cm, true, iso, row.iso19);
        check(Relation::isogenous_cm, false, non, row.non20);
        check(Relation::isogenous_no_cm, false, non, row.non19);
        check(Relation::not_isogenous, false, non, row.generic);
    }
    o.detail = o.ok ? std::to_string(cells) + " entries" : o.detail;
    return o;
}

Outcome fermat_modularity()
{
    Outcome o;
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 3; p <= 37; p += 2)
        if (is_prime(p))
            primes.push_back(p);
    auto rep = cmmod::modularity_report(primes, {1, 0});
    for (auto const & row : rep.rows)
        o.require(row.agree(), "p=" + std::to_string(row.p) + ": counted " + std::to_string(row.counted) +
                                   ", predicted " + std::to_string(row.predicted));
    o.require(rep.rows.size() == primes.size(), "missing rows");
    o.require(cmmod::fermat_count_prediction(5) == 0, "prediction at 5");
    o.require(cmmod::fermat_count_prediction(3) == 16, "prediction at 3");
    if (o.ok)
        o.detail = std::to_string(primes.size()) + " primes";
    return o;
}

// P_2 of the Fermat quartic at p: the known factor comes from the Dirichlet
// characters, the quadratic factor of the weight 3 form is completed from
// N_1 (and N_2 when the sign of the functional equation needs it).
struct FermatP2 {
    zeta::FrobeniusPoly p2;
    zeta::PicardBound bound;
};

FermatP2 fermat_pipeline(std::int64_t p, Outcome & o)
{
    const std::int64_t pp = p;
    poly::IntPoly known = poly::pow(lin(-pp), 5);
    known = poly::mul(known, poly::pow(lin(-legendre(-1, p) * pp), 3));
    known = poly::mul(known, poly::pow(lin(-legendre(2, p) * pp), 6));
    known = poly::mul(known, poly::pow(lin(-legendre(-2, p) * pp), 6));

    count::SurfaceModel fermat = count::DiagonalQuartic{};
    const std::string hash = count::surface_hash(fermat);
    auto f1 = ff::FieldCtx::create(p, 1);
    auto f2 = ff::FieldCtx::create(p, 2);
    const std::int64_t n1 = count::count_quartic(count::fermat_quartic(), f1);
    const std::int64_t n2_jacobi = count::count_diagonal_quartic_jacobi(count::DiagonalQuartic{}, f2).count;
    const std::int64_t n2_direct = count::count_quartic(count::fermat_quartic(), f2);
    o.require(n2_jacobi == n2_direct, "p=" + std::to_string(p) + ": N_2 Jacobi " + std::to_string(n2_jacobi) +
                                          " vs direct " + std::to_string(n2_direct));

    auto tr = zeta::traces_from_counts({{hash, p, 1, n1}, {hash, p, 2, n2_direct}});
    auto p2 = zeta::p2_from_traces(tr, known);
    // N_1 alone must already settle p = 5 but not p = 3
    auto tr1 = zeta::traces_from_counts({{hash, p, 1, n1}});
    try {
        auto one = zeta::p2_from_traces(tr1, known);
        o.require(one.coeffs == p2.coeffs, "p=" + std::to_string(p) + ": one-trace completion differs");
    }
    catch (IncompletenessError const &) {
        o.require(p == 3, "p=" + std::to_string(p) + ": one trace did not suffice");
    }
    return {p2, zeta::picard_upper_bound(p2)};
}

Outcome zeta_pipeline()
{
    Outcome o;
    auto five = fermat_pipeline(5, o);
    auto expected5 = poly::mul(poly::mul(poly::pow(lin(-5), 8), poly::pow(lin(5), 12)), poly::IntPoly{1, 6, 25});
    o.require(five.p2.coeffs == expected5, "p=5: P_2 = " + poly::format(five.p2.coeffs));
    o.require(five.bound.bound == 20, "p=5: bound " + std::to_string(five.bound.bound));

    auto three = fermat_pipeline(3, o);
    o.require(three.bound.bound == 22, "p=3: bound " + std::to_string(three.bound.bound));
    // quadratic factor 1 - b_3 T + chi_-4(3) 9 T^2 = 1 - 9T^2
    auto expected3 = poly::mul(poly::mul(poly::pow(lin(-3), 11), poly::pow(lin(3), 9)), poly::IntPoly{1, 0, -9});
    o.require(three.p2.coeffs == expected3, "p=3: P_2 = " + poly::format(three.p2.coeffs));
    if (o.ok)
        o.detail = "bounds 20 (p=5) and 22 (p=3)";
    return o;
}

Outcome jacobi_equivalence()
{
    Outcome o;
    std::mt19937_64 rng(20240505);
    int total = 0;
    for (auto [p, r] : std::vector<std::pair<int, int>>{{5, 1}, {3, 2}, {13, 1}, {5, 2}}) {
        auto f = ff::FieldCtx::create(p, r);
        std::uniform_int_distribution<std::int64_t> unit(1, f->q() - 1);
        for (int t = 0; t < 60; ++t) {
            std::array<ff::FieldElement, 4> a{ff::FieldElement::from_index(f, unit(rng)), ff::FieldElement::from_index(f, unit(rng)),
                                              ff::FieldElement::from_index(f, unit(rng)), ff::FieldElement::from_index(f, unit(rng))};
            std::vector<ff::FieldElement> coeffs(35, ff::FieldElement::zero(f));
            coeffs[count::monomial_index({4, 0, 0, 0})] = a[0];
            coeffs[count::monomial_index({0, 4, 0, 0})] = a[1];
            coeffs[count::monomial_index({0, 0, 4, 0})] = a[2];
            coeffs[count::monomial_index({0, 0, 0, 4})] = a[3];
            const auto jac = count::count_diagonal_quartic_jacobi(a).count;
            const auto direct = count::count_quartic(coeffs);
            o.require(jac == direct, "q=" + std::to_string(f->q()) + ": " + std::to_string(jac) + " vs " + std::to_string(direct));
            ++total;
        }
    }
    if (o.ok)
        o.detail = std::to_string(total) + " diagonal quartics";
    return o;
}

Outcome shioda_mitani_kummer()
{
    Outcome o;
    auto periods = singk3::shioda_mitani_periods({4, 0, 4});
    o.require(periods.tau == singk3::QuadraticIrrational(0, 1, -1), "tau = " + periods.tau.to_string());
    o.require(periods.tau_prime == singk3::QuadraticIrrational(0, 4, -1), "tau' = " + periods.tau_prime.to_string());
    auto doubled = singk3::kummer_double({{4, 0, 4}});
    o.require(doubled.form == bqf::BinaryQuadraticForm{8, 0, 8}, "Kummer double " + bqf::to_string(doubled.form));
    return o;
}

Outcome inose_identities()
{
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.0, 3.0);
    auto sample = [&]() {
        for (;;) {
            singk3::Complex tau(re(rng), std::sqrt(1.0 - 0.25) + im(rng));
            if (std::abs(tau) >= 1.0)
                return tau;
        }
    };
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        auto tau = sample(), tau2 = sample();
        auto j1 = singk3::j_invariant(tau);
        auto j2 = singk3::j_invariant(tau2);
        auto a = singk3::inose_coefficients(j1, j2);
        auto b = singk3::inose_coefficients(j1, j2);
        auto rel = [](singk3::Complex x, singk3::Complex y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
        const double e1 = rel(a.A * a.A * a.A, j1 * j2 / std::pow(12.0, 6));
        const auto rhs = (1.0 - j1 / 1728.0) * (1.0 - j2 / 1728.0);
        const double e2 = std::abs(rhs) == 0.0 ? std::abs(a.B * a.B) : rel(a.B * a.B, rhs);
        worst = std::max({worst, e1, e2});
        o.require(e1 < 1e-10 && e2 < 1e-10, "relation error above 1e-10");
        o.require(std::memcmp(&a.A, &b.A, sizeof a.A) == 0 && std::memcmp(&a.B, &b.B, sizeof a.B) == 0,
                  "branch choice not bit-identical");
    }
    if (o.ok) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "max relative error %.2e", worst);
        o.detail = buf;
    }
    return o;
}

Outcome sieve_smoke()
{
    Outcome o;
    std::vector<std::int64_t> primes{5, 13, 17};
    auto res = cmmod::cm_sieve(cmmod::dwork_family(), cmmod::eta4_pow6_expansion(64), primes);
    std::vector<std::pair<std::int64_t, std::int64_t>> residues;
    for (auto p : primes) {
        bool zero = false;
        for (auto const & c : res.candidates)
            zero = zero || (c.p == p && c.lambda == 0);
        o.require(zero, "lambda = 0 missing at p=" + std::to_string(p));
        residues.push_back({p, 0});
    }
    auto lifted = cmmod::lift_parameter(residues, 10);
    o.require(lifted && *lifted == 0, "lift of the zero residues");
    o.require(zeta::van_luijk_combine(2, 5, 2, 1).bound == 1, "van Luijk (2,5,2,1)");
    o.require(zeta::van_luijk_combine(2, -1, 2, 3).bound == 1, "van Luijk (2,-1,2,3)");
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char * name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "class number one list", 1.0, class_number_one},
        {2, "Kuwata table", 1.0, kuwata_table},
        {3, "Fermat modularity for p <= 37", 30.0, fermat_modularity},
        {4, "zeta and Picard pipeline at p = 5 and p = 3", 120.0, zeta_pipeline},
        {5, "Jacobi sums equal direct counts", 300.0, jacobi_equivalence},
        {6, "Shioda-Mitani periods and Kummer doubling", 1.0, shioda_mitani_kummer},
        {7, "Inose identities", 5.0, inose_identities},
        {8, "CM sieve, lifting and van Luijk combiner", 60.0, sieve_smoke},
    };

    int failures = 0;
    for (auto const & c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (std::exception const & e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s > c.budget_seconds) {
            o.ok = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time budget");
        }
        if (!o.ok)
            ++failures;
        std::printf("[%s] %d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, o.detail.empty() ? "" : ": ",
                    o.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
