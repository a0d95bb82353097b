#include "k3arith/ellsurf.hpp"

#include <algorithm>
#include <cctype>

#include "k3arith/error.hpp"

namespace k3::ellsurf {

int KodairaFiberType::components() const
{
    switch (kind) {
    case FiberKind::I:
        return n == 0 ? 1 : n;
    case FiberKind::I_star:
        return n + 5;
    case FiberKind::II:
        return 1;
    case FiberKind::III:
        return 2;
    case FiberKind::IV:
        return 3;
    case FiberKind::IV_star:
        return 7;
    case FiberKind::III_star:
        return 8;
    case FiberKind::II_star:
        return 9;
    }
    return 1;
}

int KodairaFiberType::euler_number() const
{
    switch (kind) {
    case FiberKind::I:
        return n;
    case FiberKind::I_star:
        return n + 6;
    case FiberKind::II:
        return 2;
    case FiberKind::III:
        return 3;
    case FiberKind::IV:
        return 4;
    case FiberKind::IV_star:
        return 8;
    case FiberKind::III_star:
        return 9;
    case FiberKind::II_star:
        return 10;
    }
    return 0;
}

std::string to_string(KodairaFiberType const & t)
{
    switch (t.kind) {
    case FiberKind::I:
        return "I_" + std::to_string(t.n);
    case FiberKind::I_star:
        return "I_" + std::to_string(t.n) + "*";
    case FiberKind::II:
        return "II";
    case FiberKind::III:
        return "III";
    case FiberKind::IV:
        return "IV";
    case FiberKind::IV_star:
        return "IV*";
    case FiberKind::III_star:
        return "III*";
    case FiberKind::II_star:
        return "II*";
    }
    return "?";
}

KodairaFiberType parse_fiber(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (ch != '_' && ch != '^' && !std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    bool star = !s.empty() && s.back() == '*';
    if (star)
        s.pop_back();
    auto bad = [&]() { return UsageError("unknown Kodaira fiber type '" + std::string(text) + "'"); };
    if (s == "II")
        return KodairaFiberType::of(star ? FiberKind::II_star : FiberKind::II);
    if (s == "III")
        return KodairaFiberType::of(star ? FiberKind::III_star : FiberKind::III);
    if (s == "IV")
        return KodairaFiberType::of(star ? FiberKind::IV_star : FiberKind::IV);
    if (s.size() >= 2 && s[0] == 'I' && std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        int n = std::stoi(s.substr(1));
        return star ? KodairaFiberType::In_star(n) : KodairaFiberType::In(n);
    }
    throw bad();
}

FiberConfiguration::FiberConfiguration(std::initializer_list<std::pair<KodairaFiberType, int>> items)
{
    for (auto const & [t, k] : items)
        add(t, k);
}

void FiberConfiguration::add(KodairaFiberType const & t, int count)
{
    if (count < 0)
        throw UsageError("negative fiber multiplicity");
    if (t.is_smooth() || count == 0)
        return;
    fibers_[t] += count;
}

std::vector<std::pair<KodairaFiberType, int>> FiberConfiguration::entries() const
{
    std::vector<std::pair<KodairaFiberType, int>> out(fibers_.begin(), fibers_.end());
    std::stable_sort(out.begin(), out.end(), [](auto const & x, auto const & y) {
        return x.first.euler_number() > y.first.euler_number();
    });
    return out;
}

int FiberConfiguration::count(KodairaFiberType const & t) const
{
    auto it = fibers_.find(t);
    return it == fibers_.end() ? 0 : it->second;
}

int FiberConfiguration::reducible_contribution() const
{
    int s = 0;
    for (auto const & [t, k] : fibers_)
        s += k * (t.components() - 1);
    return s;
}

std::string to_string(FiberConfiguration const & config)
{
    std::string out;
    for (auto const & [t, k] : config.entries()) {
        if (!out.empty())
            out += ", ";
        if (k != 1)
            out += std::to_string(k) + " ";
        out += to_string(t);
    }
    return out.empty() ? "smooth" : out;
}

int euler_number(FiberConfiguration const & config)
{
    int e = 0;
    for (auto const & [t, k] : config.entries())
        e += k * t.euler_number();
    return e;
}

int shioda_tate_rank(int rho, FiberConfiguration const & config)
{
    if (rho < 2 || rho > 20)
        throw UsageError("Picard number " + std::to_string(rho) + " outside [2, 20]");
    int r = rho - 2 - config.reducible_contribution();
    if (r < 0)
        throw InconsistencyError("fiber configuration " + to_string(config) + " needs rho >= " +
                                 std::to_string(2 + config.reducible_contribution()) + ", got " + std::to_string(rho));
    return r;
}

KodairaFiberType base_change_fiber(int n)
{
    if (n < 1)
        throw UsageError("base change degree must be positive");
    switch (n % 6) {
    case 0:
        return KodairaFiberType::In(0);
    case 1:
        return KodairaFiberType::of(FiberKind::II_star);
    case 2:
        return KodairaFiberType::of(FiberKind::IV_star);
    case 3:
        return KodairaFiberType::In_star(0);
    case 4:
        return KodairaFiberType::of(FiberKind::IV);
    default:
        return KodairaFiberType::of(FiberKind::II);
    }
}

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::not_isogenous:
        return "not-isogenous";
    case Relation::isogenous_no_cm:
        return "isogenous-no-cm";
    case Relation::isogenous_cm:
        return "isogenous-cm";
    }
    return "?";
}

Relation parse_relation(std::string_view text)
{
    std::string s(text);
    std::replace(s.begin(), s.end(), '_', '-');
    if (s == "not-isogenous")
        return Relation::not_isogenous;
    if (s == "isogenous-no-cm")
        return Relation::isogenous_no_cm;
    if (s == "isogenous-cm")
        return Relation::isogenous_cm;
    throw UsageError("unknown relation '" + std::string(text) + "' (not-isogenous | isogenous-no-cm | isogenous-cm)");
}

int rho_kummer_product(Relation relation)
{
    switch (relation) {
    case Relation::not_isogenous:
        return 18;
    case Relation::isogenous_no_cm:
        return 19;
    case Relation::isogenous_cm:
        return 20;
    }
    return 18;
}

KuwataRow kuwata_row(int n, Relation relation, bool isomorphic)
{
    // Beyond degree 6 the base change is no longer K3.
    if (n < 1 || n > 6)
        throw UsageError("Kuwata base change degree must be in 1..6, got " + std::to_string(n));
    if (isomorphic && relation == Relation::not_isogenous)
        throw UsageError("isomorphic curves are isogenous");

    FiberConfiguration config;
    config.add(base_change_fiber(n), 2);
    if (isomorphic) {
        config.add(KodairaFiberType::In(2), n);
        config.add(KodairaFiberType::In(1), 2 * n);
    }
    else {
        config.add(KodairaFiberType::In(1), 4 * n);
    }
    const int rho = rho_kummer_product(relation);
    return {n, relation, isomorphic, rho, config, shioda_tate_rank(rho, config)};
}

} // namespace k3::ellsurf
