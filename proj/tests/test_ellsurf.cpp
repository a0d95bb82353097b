#include <doctest.h>

#include <set>

#include "k3arith/ellsurf.hpp"
#include "k3arith/error.hpp"

using namespace k3;
using namespace k3::ellsurf;

namespace {

using T = KodairaFiberType;

struct TableRow {
    int n;
    FiberConfiguration iso_config;
    int iso_rank_cm, iso_rank_no_cm;
    FiberConfiguration config;
    int rank_cm, rank_no_cm, rank_not_isogenous;
};

// Fiber configurations and Mordell-Weil ranks of X^(n), typed in by hand.
std::vector<TableRow> kuwata_table()
{
    auto II_star = T::of(FiberKind::II_star);
    auto IV_star = T::of(FiberKind::IV_star);
    auto I0_star = T::In_star(0);
    auto IV = T::of(FiberKind::IV);
    auto II = T::of(FiberKind::II);
    auto I1 = T::In(1), I2 = T::In(2);
    return {
        {1, {{II_star, 2}, {I2, 1}, {I1, 2}}, 1, 0, {{II_star, 2}, {I1, 4}}, 2, 1, 0},
        {2, {{IV_star, 2}, {I2, 2}, {I1, 4}}, 4, 3, {{IV_star, 2}, {I1, 8}}, 6, 5, 4},
        {3, {{I0_star, 2}, {I2, 3}, {I1, 6}}, 7, 6, {{I0_star, 2}, {I1, 12}}, 10, 9, 8},
        {4, {{IV, 2}, {I2, 4}, {I1, 8}}, 10, 9, {{IV, 2}, {I1, 16}}, 14, 13, 12},
        {5, {{II, 2}, {I2, 5}, {I1, 10}}, 13, 12, {{II, 2}, {I1, 20}}, 18, 17, 16},
        {6, {{I2, 6}, {I1, 12}}, 12, 11, {{I1, 24}}, 18, 17, 16},
    };
}

} // namespace

TEST_CASE("Kodaira constants")
{
    CHECK(T::In(0).components() == 1);
    CHECK(T::In(0).euler_number() == 0);
    for (int n = 1; n < 10; ++n) {
        CHECK(T::In(n).components() == n);
        CHECK(T::In(n).euler_number() == n);
        CHECK(T::In_star(n).components() == n + 5);
        CHECK(T::In_star(n).euler_number() == n + 6);
    }
    CHECK(T::of(FiberKind::II).components() == 1);
    CHECK(T::of(FiberKind::II).euler_number() == 2);
    CHECK(T::of(FiberKind::III).components() == 2);
    CHECK(T::of(FiberKind::III).euler_number() == 3);
    CHECK(T::of(FiberKind::IV).components() == 3);
    CHECK(T::of(FiberKind::IV).euler_number() == 4);
    CHECK(T::of(FiberKind::IV_star).components() == 7);
    CHECK(T::of(FiberKind::IV_star).euler_number() == 8);
    CHECK(T::of(FiberKind::III_star).components() == 8);
    CHECK(T::of(FiberKind::III_star).euler_number() == 9);
    CHECK(T::of(FiberKind::II_star).components() == 9);
    CHECK(T::of(FiberKind::II_star).euler_number() == 10);
}

TEST_CASE("fiber names")
{
    CHECK(parse_fiber("I_3") == T::In(3));
    CHECK(parse_fiber("I3") == T::In(3));
    CHECK(parse_fiber("I0*") == T::In_star(0));
    CHECK(parse_fiber("I_0^*") == T::In_star(0));
    CHECK(parse_fiber("III*") == T::of(FiberKind::III_star));
    CHECK(parse_fiber("IV^*") == T::of(FiberKind::IV_star));
    CHECK(parse_fiber("II") == T::of(FiberKind::II));
    CHECK_THROWS_AS(parse_fiber("V"), UsageError);
    for (auto t : {T::In(4), T::In_star(2), T::of(FiberKind::II_star), T::of(FiberKind::III)})
        CHECK(parse_fiber(to_string(t)) == t);
}

TEST_CASE("Shioda-Tate")
{
    FiberConfiguration c{{T::of(FiberKind::II_star), 2}, {T::In(2), 1}, {T::In(1), 2}};
    CHECK(shioda_tate_rank(20, c) == 1);
    CHECK(shioda_tate_rank(18, {{T::In(1), 24}}) == 16);
    CHECK(shioda_tate_rank(2, {}) == 0);
    CHECK_THROWS_AS(shioda_tate_rank(18, c), InconsistencyError);
    CHECK_THROWS_AS(shioda_tate_rank(21, {}), UsageError);
    CHECK_THROWS_AS(shioda_tate_rank(1, {}), UsageError);

    // monotone in the reducible contribution at fixed rho
    FiberConfiguration grow;
    int last = shioda_tate_rank(20, grow);
    for (int k = 0; k < 9; ++k) {
        grow.add(T::In(2));
        int r = shioda_tate_rank(20, grow);
        CHECK(r == last - 1);
        last = r;
    }
}

TEST_CASE("Euler numbers")
{
    CHECK(euler_number({{T::of(FiberKind::II_star), 2}, {T::In(2), 1}, {T::In(1), 2}}) == 24);
    CHECK(euler_number({}) == 0);
}

TEST_CASE("base change of II*")
{
    CHECK(base_change_fiber(1) == T::of(FiberKind::II_star));
    CHECK(base_change_fiber(2) == T::of(FiberKind::IV_star));
    CHECK(base_change_fiber(3) == T::In_star(0));
    CHECK(base_change_fiber(4) == T::of(FiberKind::IV));
    CHECK(base_change_fiber(5) == T::of(FiberKind::II));
    CHECK(base_change_fiber(6) == T::In(0));
    CHECK(base_change_fiber(6).is_smooth());
    for (int n = 1; n <= 30; ++n)
        CHECK(base_change_fiber(n) == base_change_fiber(n + 6));
    CHECK_THROWS_AS(base_change_fiber(0), UsageError);
}

TEST_CASE("rho of Km(E x E')")
{
    CHECK(rho_kummer_product(Relation::not_isogenous) == 18);
    CHECK(rho_kummer_product(Relation::isogenous_no_cm) == 19);
    CHECK(rho_kummer_product(Relation::isogenous_cm) == 20);
    CHECK(parse_relation("isogenous-cm") == Relation::isogenous_cm);
    CHECK(parse_relation("not_isogenous") == Relation::not_isogenous);
    CHECK_THROWS_AS(parse_relation("sometimes"), UsageError);
}

TEST_CASE("every cell of the Kuwata table")
{
    for (auto const & row : kuwata_table()) {
        CAPTURE(row.n);
        auto cm_iso = kuwata_row(row.n, Relation::isogenous_cm, true);
        auto nocm_iso = kuwata_row(row.n, Relation::isogenous_no_cm, true);
        CHECK(cm_iso.config == row.iso_config);
        CHECK(nocm_iso.config == row.iso_config);
        CHECK(cm_iso.mw_rank == row.iso_rank_cm);
        CHECK(nocm_iso.mw_rank == row.iso_rank_no_cm);

        auto cm = kuwata_row(row.n, Relation::isogenous_cm, false);
        auto nocm = kuwata_row(row.n, Relation::isogenous_no_cm, false);
        auto generic = kuwata_row(row.n, Relation::not_isogenous, false);
        for (auto const * r : {&cm, &nocm, &generic})
            CHECK(r->config == row.config);
        CHECK(cm.mw_rank == row.rank_cm);
        CHECK(nocm.mw_rank == row.rank_no_cm);
        CHECK(generic.mw_rank == row.rank_not_isogenous);

        for (auto const * r : {&cm_iso, &nocm_iso, &cm, &nocm, &generic})
            CHECK(euler_number(r->config) == 24);
    }
}

TEST_CASE("Kuwata row examples and preconditions")
{
    auto r = kuwata_row(3, Relation::not_isogenous, false);
    CHECK(to_string(r.config) == "2 I_0*, 12 I_1");
    CHECK(r.mw_rank == 8);
    CHECK(r.rho == 18);
    CHECK(kuwata_row(5, Relation::isogenous_cm, false).mw_rank == 18);
    CHECK(kuwata_row(1, Relation::isogenous_cm, true).mw_rank == 1);
    CHECK_THROWS_AS(kuwata_row(7, Relation::not_isogenous, false), UsageError);
    CHECK_THROWS_AS(kuwata_row(0, Relation::not_isogenous, false), UsageError);
    CHECK_THROWS_AS(kuwata_row(2, Relation::not_isogenous, true), UsageError);
}

TEST_CASE("every rank from 0 to 18 except 15 occurs")
{
    std::set<int> seen;
    for (int n = 1; n <= 6; ++n)
        for (auto rel : {Relation::not_isogenous, Relation::isogenous_no_cm, Relation::isogenous_cm})
            for (bool iso : {false, true}) {
                if (iso && rel == Relation::not_isogenous)
                    continue;
                seen.insert(kuwata_row(n, rel, iso).mw_rank);
            }
    for (int r = 0; r <= 18; ++r)
        CHECK(seen.count(r) == (r == 15 ? 0u : 1u));
}
