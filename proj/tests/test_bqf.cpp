#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "k3arith/bqf.hpp"
#include "k3arith/error.hpp"
#include "k3arith/numtheory.hpp"

using namespace k3;
using namespace k3::bqf;

namespace {

using Form = BinaryQuadraticForm;

Form act(Form const & f, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s)
{
    // f(px + qy, rx + sy)
    auto ev = [&](std::int64_t x, std::int64_t y) { return f.a * x * x + f.b * x * y + f.c * y * y; };
    return {ev(p, r), 2 * f.a * p * q + f.b * (p * s + q * r) + 2 * f.c * r * s, ev(q, s)};
}

// Search SL(2,Z) (det = +1) or GL(2,Z) matrices with entries bounded by `box`.
bool small_word_equivalent(Form const & f, Form const & g, int box, bool allow_det_minus_one)
{
    for (int p = -box; p <= box; ++p)
        for (int q = -box; q <= box; ++q)
            for (int r = -box; r <= box; ++r)
                for (int s = -box; s <= box; ++s) {
                    int det = p * s - q * r;
                    if (det != 1 && !(allow_det_minus_one && det == -1))
                        continue;
                    if (act(f, p, q, r, s) == g)
                        return true;
                }
    return false;
}

// Composition through ideal multiplication in the order of discriminant d.
// An element (u, v) stands for (u + v sqrt(d)) / 2; the form (a, b, c)
// corresponds to the ideal with oriented basis a, (-b + sqrt d) / 2.
struct Elt {
    std::int64_t u, v;
};

Form ideal_product_oracle(Form const & f, Form const & g)
{
    const std::int64_t d = f.discriminant();
    Elt f1{2 * f.a, 0}, f2{-f.b, 1};
    Elt g1{2 * g.a, 0}, g2{-g.b, 1};
    auto mul = [d](Elt x, Elt y) {
        std::int64_t uu = x.u * y.u + d * x.v * y.v;
        std::int64_t vv = x.u * y.v + x.v * y.u;
        REQUIRE(uu % 2 == 0);
        REQUIRE(vv % 2 == 0);
        return Elt{uu / 2, vv / 2};
    };
    std::vector<Elt> gens{mul(f1, g1), mul(f1, g2), mul(f2, g1), mul(f2, g2)};

    // Hermite normal form of the lattice spanned by gens.
    for (;;) {
        auto nonzero = std::count_if(gens.begin(), gens.end(), [](Elt e) { return e.v != 0; });
        if (nonzero <= 1)
            break;
        auto piv = std::min_element(gens.begin(), gens.end(), [](Elt x, Elt y) {
            if (x.v == 0)
                return false;
            if (y.v == 0)
                return true;
            return std::abs(x.v) < std::abs(y.v);
        });
        Elt pv = *piv;
        for (auto & e : gens) {
            if (&e == &*piv || e.v == 0)
                continue;
            std::int64_t t = e.v / pv.v;
            e.u -= t * pv.u;
            e.v -= t * pv.v;
        }
    }
    Elt second{0, 0};
    std::int64_t A = 0;
    for (auto e : gens) {
        if (e.v != 0)
            second = e.v > 0 ? e : Elt{-e.u, -e.v};
        else
            A = std::gcd(A, std::abs(e.u));
    }
    const std::int64_t C = second.v;
    REQUIRE(A > 0);
    REQUIRE(C > 0);
    const std::int64_t B = mod(second.u, A);
    // Norm of the ideal is A*C/2; the form is N(x e1 + y e2) / N(I).
    const std::int64_t two_n = A * C;
    auto norm4 = [d](std::int64_t u, std::int64_t v) { return u * u - d * v * v; };
    REQUIRE(norm4(A, 0) % (2 * two_n) == 0);
    REQUIRE(norm4(B, C) % (2 * two_n) == 0);
    REQUIRE((A * B) % two_n == 0);
    Form out{norm4(A, 0) / (2 * two_n), -(A * B) / two_n, norm4(B, C) / (2 * two_n)};
    REQUIRE(out.discriminant() == d);
    return reduce(out);
}

std::vector<std::int64_t> discriminants_up_to(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = -3; d >= -bound; --d)
        if (mod(d, 4) == 0 || mod(d, 4) == 1)
            out.push_back(d);
    return out;
}

} // namespace

TEST_CASE("reduction examples")
{
    CHECK(reduce({1, 0, 5}) == Form{1, 0, 5});
    CHECK(reduce({5, 4, 1}) == Form{1, 0, 1});
    CHECK(small_word_equivalent({5, 4, 1}, {1, 0, 1}, 3, false));
    CHECK(reduce({2, 2, 3}) == Form{2, 2, 3});
    CHECK(Form{2, 2, 3}.discriminant() == -20);
    CHECK_THROWS_AS(reduce({1, 3, 1}), DomainError);
    CHECK_THROWS_AS(reduce({-1, 0, -1}), DomainError);
}

TEST_CASE("reduction is idempotent, preserves d, and stays in the SL2 orbit")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<std::int64_t> ac(1, 30);
    std::uniform_int_distribution<std::int64_t> bb(-30, 30);
    int done = 0;
    while (done < 300) {
        Form f{ac(rng), bb(rng), ac(rng)};
        if (!f.is_positive_definite())
            continue;
        ++done;
        auto r = reduce(f);
        CHECK(r.is_reduced());
        CHECK(reduce(r) == r);
        CHECK(r.discriminant() == f.discriminant());
        // push f around by a random SL2 word; the reduced form must not move
        int p = coef(rng), q = coef(rng);
        if (std::gcd(p, q) != 1)
            continue;
        auto e = xgcd(p, q); // p x + q y = 1, so (p q; -y x) has det 1
        auto g = act(f, p, q, -e.y, e.x);
        CHECK(reduce(g) == r);
    }
}

TEST_CASE("oriented isomorphism of singular K3 surfaces")
{
    CHECK(is_isomorphic_singular_k3({4, 0, 4}, {4, 0, 4}));
    CHECK(is_isomorphic_singular_k3({1, 2, 2}, {1, 0, 1}));
    CHECK(small_word_equivalent({1, 2, 2}, {1, 0, 1}, 2, false));
    CHECK_FALSE(is_isomorphic_singular_k3({2, 1, 3}, {2, -1, 3}));
    CHECK(is_gl2_equivalent({2, 1, 3}, {2, -1, 3}));
    // the independent search agrees: GL2 yes, SL2 not in a generous box
    CHECK(small_word_equivalent({2, 1, 3}, {2, -1, 3}, 2, true));
    CHECK_FALSE(small_word_equivalent({2, 1, 3}, {2, -1, 3}, 4, false));
    CHECK_THROWS_AS(is_isomorphic_singular_k3({1, 0, -1}, {1, 0, 1}), DomainError);
}

TEST_CASE("composition examples for d = -23")
{
    for (auto const & f : reduced_forms(-23))
        CHECK(compose(principal_form(-23), f) == f);
    CHECK(compose({2, 1, 3}, {2, -1, 3}) == Form{1, 1, 6});
    CHECK(compose({2, 1, 3}, {2, 1, 3}) == Form{2, -1, 3});
    CHECK_THROWS_AS(compose({2, 1, 3}, {1, 1, 5}), DomainError);
    CHECK_THROWS_AS(compose({2, 2, 2}, {1, 0, 3}), DomainError);
}

TEST_CASE("composition agrees with ideal multiplication for |d| <= 400")
{
    std::size_t pairs = 0;
    for (auto d : discriminants_up_to(400)) {
        auto forms = reduced_forms(d);
        for (auto const & f : forms)
            for (auto const & g : forms) {
                REQUIRE(compose(f, g) == ideal_product_oracle(f, g));
                ++pairs;
            }
    }
    CHECK(pairs > 1000);
}

TEST_CASE("class groups")
{
    CHECK(ClassGroup(-163).order() == 1);
    ClassGroup g23(-23);
    CHECK(g23.order() == 3);
    std::set<Form> forms(g23.forms().begin(), g23.forms().end());
    CHECK(forms == std::set<Form>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});
    CHECK(g23.forms()[g23.identity()] == principal_form(-23));
    CHECK(g23.exponent() == 3);
    ClassGroup g15(-15);
    CHECK(g15.order() == 2);
    CHECK(g15.exponent() == 2);
    CHECK_THROWS_AS(ClassGroup(-5), DomainError);
    CHECK_THROWS_AS(ClassGroup(8), DomainError);
}

TEST_CASE("group axioms over a range of discriminants")
{
    for (auto d : discriminants_up_to(300)) {
        ClassGroup g(d);
        auto const & t = g.table();
        const auto n = g.order();
        REQUIRE(n == class_number(d));
        CHECK(g.is_abelian());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(t[i][g.identity()] == i);
            auto inv = g.index_of(g.forms()[i].conjugate());
            CHECK(t[i][inv] == g.identity());
            CHECK(n % g.element_order(i) == 0);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    REQUIRE(t[t[i][j]][k] == t[i][t[j][k]]);
        }
    }
}

TEST_CASE("class number one discriminants")
{
    std::vector<std::int64_t> expected{-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163};
    auto got = class_number_one_discriminants(200);
    CHECK(got == expected);
    CHECK(class_number_one_discriminants(4) == std::vector<std::int64_t>{-3, -4});
    for (auto d : got)
        CHECK(ClassGroup(d).order() == 1);
    // nothing new between 200 and 2000
    CHECK(class_number_one_discriminants(2000) == expected);
}

TEST_CASE("scaling")
{
    CHECK(scale({4, 0, 4}, 2) == Form{8, 0, 8});
    CHECK(scale({2, 1, 3}, 1) == Form{2, 1, 3});
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> ac(1, 20), bb(-20, 20), nn(1, 9);
    for (int t = 0; t < 100; ++t) {
        Form f{ac(rng), bb(rng), ac(rng)};
        auto n = nn(rng);
        CHECK(scale(f, n).discriminant() == n * n * f.discriminant());
    }
}

TEST_CASE("parsing and printing")
{
    CHECK(parse_form("2,-1,3") == Form{2, -1, 3});
    CHECK(to_string(Form{2, -1, 3}) == "(2,-1,3)");
    CHECK_THROWS_AS(parse_form("2,1"), UsageError);
}
