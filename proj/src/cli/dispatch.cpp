#include "k3arith/cli/dispatch.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3arith/bqf.hpp"
#include "k3arith/cli/cache_io.hpp"
#include "k3arith/cli/report.hpp"
#include "k3arith/cmmod.hpp"
#include "k3arith/count.hpp"
#include "k3arith/ellsurf.hpp"
#include "k3arith/error.hpp"
#include "k3arith/singk3.hpp"
#include "k3arith/zeta.hpp"

namespace k3::cli {

namespace {

using nlohmann::json;

// A report that still has to be written, but whose command failed its own
// verification (exit code 1).
struct Outcome {
    json config;
    json results;
    std::optional<CacheStats> cache;
    bool verified = true;
};

std::vector<std::int64_t> parse_int_list(std::string const & text, std::string const & what)
{
    std::string s = text;
    for (char & ch : s) {
        if (ch == ',' || ch == '[' || ch == ']' || ch == ';')
            ch = ' ';
    }
    std::istringstream is(s);
    std::vector<std::int64_t> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        }
        catch (std::exception const &) {
            used = 0;
        }
        if (used != tok.size())
            throw UsageError("bad integer '" + tok + "' in " + what);
        out.push_back(v);
    }
    return out;
}

// "3..37" (primes in range) or "3,5,7".
std::vector<std::int64_t> parse_primes(std::string const & text)
{
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        auto lo = parse_int_list(text.substr(0, dots), "--primes");
        auto hi = parse_int_list(text.substr(dots + 2), "--primes");
        if (lo.size() != 1 || hi.size() != 1)
            throw UsageError("expected a prime range like 3..37, got '" + text + "'");
        return primes_in_range(lo[0], hi[0]);
    }
    return parse_int_list(text, "--primes");
}

json complex_json(std::complex<double> z)
{
    return json::array({z.real(), z.imag()});
}

json complex_list(std::vector<std::complex<double>> const & v)
{
    json out = json::array();
    for (auto const & z : v)
        out.push_back(complex_json(z));
    return out;
}

json form_json(bqf::BinaryQuadraticForm const & f)
{
    return json::array({f.a, f.b, f.c});
}

json picard_json(zeta::PicardBound const & b)
{
    json factors = json::array();
    for (auto const & f : b.factors)
        factors.push_back({{"m", f.m}, {"multiplicity", f.multiplicity}});
    return {{"bound", b.bound},
            {"known_part", b.known_part},
            {"slack", b.slack},
            {"cyclotomic_factors", factors},
            {"parity_ok", b.parity_ok},
            {"note", b.note}};
}

std::string cache_path_from(std::string const & flag)
{
    if (!flag.empty())
        return flag;
    if (char const * env = std::getenv("K3_CACHE"))
        return env;
    return {};
}

struct Globals {
    std::string out_path;
    unsigned jobs = 1;
    std::string cache;
};

// --- count -----------------------------------------------------------------

struct CountArgs {
    std::string model;
    std::string coeffs;
    std::int64_t lambda = 0;
    std::int64_t p = 0;
    int r = 1;
    bool force = false;
    bool verify_cache = false;
    double work_limit = 5e9;
};

Outcome run_count(CountArgs const & a, Globals const & g)
{
    auto coeffs = parse_int_list(a.coeffs, "--coeffs");
    auto need = [&](std::size_t n) {
        if (coeffs.size() != n)
            throw UsageError(a.model + " model needs " + std::to_string(n) + " coefficients, got " +
                             std::to_string(coeffs.size()));
    };
    count::SurfaceModel model;
    if (a.model == "quartic") {
        need(35);
        count::Quartic m;
        std::copy(coeffs.begin(), coeffs.end(), m.coeffs.begin());
        model = m;
    }
    else if (a.model == "sextic") {
        need(28);
        count::DoubleSextic m;
        std::copy(coeffs.begin(), coeffs.end(), m.coeffs.begin());
        model = m;
    }
    else if (a.model == "diagonal") {
        need(4);
        count::DiagonalQuartic m;
        std::copy(coeffs.begin(), coeffs.end(), m.coeffs.begin());
        model = m;
    }
    else {
        if (!coeffs.empty())
            throw UsageError("the dwork model takes --lambda, not --coeffs");
        model = count::PencilMember{count::Family::dwork, a.lambda};
    }

    count::CountCache cache;
    const std::string path = cache_path_from(g.cache);
    if (!path.empty())
        load_cache(path, cache);
    std::set<std::tuple<std::string, std::int64_t, int>> before;
    for (auto const & rec : cache.records())
        before.emplace(rec.surface, rec.p, rec.r);

    count::TowerOptions opts;
    opts.count.jobs = g.jobs;
    opts.force = a.force;
    opts.verify_cache = a.verify_cache;
    opts.work_limit = a.work_limit;
    auto records = count::count_tower(model, a.p, a.r, opts, &cache);

    std::vector<count::CountRecord> fresh;
    for (auto const & rec : records) {
        if (!before.count({rec.surface, rec.p, rec.r}))
            fresh.push_back(rec);
    }
    if (!path.empty())
        append_records(path, fresh);

    Outcome o;
    o.config = {{"model", a.model}, {"coeffs", coeffs},       {"p", a.p},       {"r", a.r},
                {"jobs", g.jobs},   {"force", a.force},       {"verify_cache", a.verify_cache}};
    if (a.model == "dwork")
        o.config["lambda"] = a.lambda;
    json counts = json::array();
    for (auto const & rec : records)
        counts.push_back({{"r", rec.r}, {"q", exact(BigInt(rec.q()))}, {"count", exact(BigInt(rec.count))}});
    auto smooth = count::known_smooth(model, a.p);
    o.results = {{"surface", count::surface_hash(model)},
                 {"counts", counts},
                 {"known_smooth", smooth ? json(*smooth) : json(nullptr)}};
    o.cache = CacheStats{path, cache.hits(), cache.misses(), cache.size()};
    return o;
}

// --- zeta / picard -----------------------------------------------------------

struct ZetaArgs {
    std::string counts;
    std::string known_factor;
    int degree = zeta::kB2;
};

std::vector<count::CountRecord> read_count_file(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read counts file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    auto record_of = [](json const & j) {
        count::CountRecord rec;
        rec.surface = j.value("surface", std::string{});
        rec.p = j.at("p").get<std::int64_t>();
        rec.r = j.at("r").get<int>();
        rec.count = j.at("count").get<std::int64_t>();
        return rec;
    };
    std::vector<count::CountRecord> out;
    try {
        auto j = json::parse(text);
        if (j.is_object() && j.contains("counts"))
            j = j["counts"];
        if (j.is_object())
            j = json::array({j});
        for (auto const & item : j)
            out.push_back(record_of(item));
        return out;
    }
    catch (json::exception const &) {
        // Fall back to the line-delimited cache format.
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            out.push_back(record_of(json::parse(line)));
        }
        catch (json::exception const & e) {
            throw UsageError("counts file " + path + " is neither JSON nor line-delimited records: " + e.what());
        }
    }
    return out;
}

Outcome run_zeta(ZetaArgs const & a)
{
    auto records = read_count_file(a.counts);
    std::optional<poly::IntPoly> known;
    if (!a.known_factor.empty())
        known = poly::parse(a.known_factor);
    auto traces = zeta::traces_from_counts(records);
    auto p2 = zeta::p2_from_traces(traces, known, a.degree);

    Outcome o;
    o.config = {{"counts", a.counts}, {"known_factor", known ? exact(*known) : json(nullptr)}, {"degree", a.degree}};
    json tr = json::array();
    for (auto const & t : traces.traces)
        tr.push_back(exact(t));
    auto sign = zeta::functional_equation_sign(p2.coeffs, p2.q);
    o.results = {{"q", p2.q},
                 {"traces", tr},
                 {"p2", exact(p2.coeffs)},
                 {"functional_equation_sign", sign ? json(*sign) : json(nullptr)},
                 {"picard", picard_json(zeta::picard_upper_bound(p2))}};
    return o;
}

struct PicardArgs {
    std::string p2;
    std::int64_t q = 0;
    int degree = zeta::kB2;
    bool artin_tate = false;
    int rho = -1;
};

Outcome run_picard(PicardArgs const & a)
{
    auto coeffs = poly::parse(a.p2);
    poly::trim(coeffs);
    if (coeffs.empty() || coeffs[0] != 1)
        throw UsageError("P_2 must have constant term 1");
    if (a.q < 2)
        throw UsageError("--q must be a prime power");
    zeta::FrobeniusPoly p{a.q, coeffs, a.degree};
    Outcome o;
    o.config = {{"p2", exact(coeffs)}, {"q", a.q}, {"degree", a.degree}, {"artin_tate", a.artin_tate}};
    auto sign = zeta::functional_equation_sign(coeffs, a.q);
    o.results = {{"picard", picard_json(zeta::picard_upper_bound(p))},
                 {"functional_equation_sign", sign ? json(*sign) : json(nullptr)}};
    if (a.artin_tate) {
        if (a.rho < 0)
            throw UsageError("--artin-tate needs --rho");
        o.config["rho"] = a.rho;
        auto at = zeta::artin_tate_discriminant(p, a.rho);
        o.results["artin_tate"] = {{"value", exact(at.value)}, {"square_class", exact(at.square_class)}};
    }
    return o;
}

// --- bqf -----------------------------------------------------------------------

struct BqfArgs {
    std::string form;
    std::string f;
    std::string g;
    std::int64_t d = 0;
    std::int64_t bound = 0;
};

Outcome run_bqf_reduce(BqfArgs const & a)
{
    auto f = bqf::parse_form(a.form);
    auto r = bqf::reduce(f);
    Outcome o;
    o.config = {{"form", form_json(f)}};
    o.results = {{"reduced", form_json(r)}, {"discriminant", f.discriminant()}, {"primitive", f.is_primitive()}};
    return o;
}

Outcome run_bqf_classgroup(BqfArgs const & a)
{
    bqf::ClassGroup cg(a.d);
    Outcome o;
    o.config = {{"d", a.d}};
    json forms = json::array();
    json orders = json::array();
    for (std::size_t i = 0; i < cg.order(); ++i) {
        forms.push_back(form_json(cg.forms()[i]));
        orders.push_back(cg.element_order(i));
    }
    o.results = {{"class_number", cg.order()},
                 {"forms", forms},
                 {"table", cg.table()},
                 {"element_orders", orders},
                 {"exponent", cg.exponent()}};
    return o;
}

Outcome run_bqf_compose(BqfArgs const & a)
{
    auto f = bqf::parse_form(a.f);
    auto g = bqf::parse_form(a.g);
    auto h = bqf::reduce(bqf::compose(f, g));
    Outcome o;
    o.config = {{"f", form_json(f)}, {"g", form_json(g)}};
    o.results = {{"product", form_json(h)}, {"discriminant", h.discriminant()}};
    return o;
}

Outcome run_bqf_h1list(BqfArgs const & a)
{
    Outcome o;
    o.config = {{"bound", a.bound}};
    o.results = {{"discriminants", bqf::class_number_one_discriminants(a.bound)}};
    return o;
}

// --- inose / kuwata ------------------------------------------------------------

struct InoseArgs {
    std::string form;
    int precision = 12;
};

Outcome run_inose(InoseArgs const & a)
{
    if (a.precision < 1 || a.precision > 18)
        throw UsageError("--precision must be between 1 and 18 digits");
    auto f = bqf::parse_form(a.form);
    auto periods = singk3::shioda_mitani_periods(f);
    const double tol = std::pow(10.0, -a.precision);
    auto j1 = singk3::j_invariant(periods.tau.approx(), tol);
    auto j2 = singk3::j_invariant(periods.tau_prime.approx(), tol);
    auto pencil = singk3::inose_coefficients(j1, j2);
    Outcome o;
    o.config = {{"form", form_json(f)}, {"precision", a.precision}};
    o.results = {{"discriminant", f.discriminant()},
                 {"tau", periods.tau.to_string()},
                 {"tau_prime", periods.tau_prime.to_string()},
                 {"tau_approx", complex_json(periods.tau.approx())},
                 {"tau_prime_approx", complex_json(periods.tau_prime.approx())},
                 {"j", complex_json(j1)},
                 {"j_prime", complex_json(j2)},
                 {"A", complex_json(pencil.A)},
                 {"B", complex_json(pencil.B)},
                 {"a4", complex_list(pencil.a4)},
                 {"a6", complex_list(pencil.a6)}};
    return o;
}

struct KuwataArgs {
    int n = 0;
    std::string relation;
    bool isomorphic = false;
};

Outcome run_kuwata(KuwataArgs const & a)
{
    auto rel = ellsurf::parse_relation(a.relation);
    auto row = ellsurf::kuwata_row(a.n, rel, a.isomorphic);
    json fibers = json::array();
    for (auto const & [t, k] : row.config.entries())
        fibers.push_back({{"type", ellsurf::to_string(t)}, {"count", k}});
    Outcome o;
    o.config = {{"n", a.n}, {"relation", ellsurf::to_string(rel)}, {"isomorphic", a.isomorphic}};
    o.results = {{"configuration", ellsurf::to_string(row.config)},
                 {"fibers", fibers},
                 {"euler_number", ellsurf::euler_number(row.config)},
                 {"rho", row.rho},
                 {"rank", row.mw_rank}};
    return o;
}

// --- modularity / sieve ----------------------------------------------------

Outcome run_modularity(std::string const & primes_text, Globals const & g)
{
    auto primes = parse_primes(primes_text);
    auto report = cmmod::modularity_report(primes, {g.jobs, 0});
    Outcome o;
    o.config = {{"primes", primes}, {"jobs", g.jobs}};
    json rows = json::array();
    for (auto const & r : report.rows)
        rows.push_back({{"p", r.p}, {"predicted", r.predicted}, {"counted", r.counted}, {"agree", r.agree()}});
    o.results = {{"rows", rows}, {"all_agree", report.ok()}, {"failed_primes", report.failed_primes()}};
    o.verified = report.ok();
    return o;
}

struct SieveArgs {
    std::string family = "dwork";
    std::string target = "eta4_6";
    std::string primes;
    bool lift = false;
    std::int64_t height = 0;
    int h_bound = 20;
};

constexpr std::size_t kMaxLiftCombinations = 4096;

Outcome run_sieve(SieveArgs const & a, Globals const & g)
{
    if (a.family != "dwork")
        throw UsageError("unknown family '" + a.family + "' (only dwork)");
    if (a.target != "eta4_6")
        throw UsageError("unknown target '" + a.target + "' (only eta4_6)");
    auto primes = parse_primes(a.primes);
    if (primes.empty())
        throw UsageError("--primes is empty");
    std::int64_t pmax = *std::max_element(primes.begin(), primes.end());
    auto target = cmmod::eta4_pow6_expansion(static_cast<std::size_t>(std::max<std::int64_t>(pmax, 1)));
    auto result = cmmod::cm_sieve(cmmod::dwork_family(), target, primes, {g.jobs, 0}, a.h_bound);

    std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
    for (auto p : primes)
        by_prime[p];
    json cands = json::array();
    for (auto const & c : result.candidates) {
        by_prime[c.p].push_back(c.lambda);
        cands.push_back({{"p", c.p}, {"lambda", c.lambda}, {"h", c.h}, {"orbit_representative", c.orbit_representative}});
    }

    BigInt modulus = 1;
    for (auto const & [p, unused] : by_prime)
        modulus *= p;
    std::int64_t height = a.height;
    if (height <= 0) {
        height = 1;
        while (2 * BigInt(height + 1) * (height + 1) <= modulus && height < 50)
            ++height;
    }

    // Rationals u/v of height <= H whose reductions are candidates at every
    // prime: the multi-prime intersection.
    json intersection = json::array();
    for (std::int64_t v = 1; v <= height; ++v) {
        for (std::int64_t u = -height; u <= height; ++u) {
            if (gcd(u, v) != 1)
                continue;
            bool all = true;
            for (auto const & [p, lams] : by_prime) {
                if (v % p == 0) {
                    all = false;
                    break;
                }
                std::int64_t x = mod(mod(u, p) * mod(xgcd(mod(v, p), p).x, p), p);
                if (std::find(lams.begin(), lams.end(), x) == lams.end()) {
                    all = false;
                    break;
                }
            }
            if (all)
                intersection.push_back(v == 1 ? std::to_string(u) : std::to_string(u) + "/" + std::to_string(v));
        }
    }

    Outcome o;
    o.config = {{"family", a.family}, {"target", a.target}, {"primes", primes}, {"lift", a.lift},
                {"height", height},   {"h_bound", a.h_bound}, {"jobs", g.jobs}};
    o.results = {{"candidates", cands}, {"intersection", intersection}, {"warnings", result.warnings}};

    if (a.lift) {
        std::size_t combos = 1;
        bool truncated = false;
        for (auto const & [p, lams] : by_prime) {
            if (lams.empty())
                combos = 0;
            else if (combos > kMaxLiftCombinations / lams.size())
                truncated = true;
            else
                combos *= lams.size();
        }
        std::set<std::string> lifts;
        if (combos > 0 && !truncated) {
            std::vector<std::size_t> idx(by_prime.size(), 0);
            for (std::size_t n = 0; n < combos; ++n) {
                std::vector<std::pair<std::int64_t, std::int64_t>> res;
                std::size_t k = 0;
                for (auto const & [p, lams] : by_prime)
                    res.emplace_back(p, lams[idx[k++]]);
                if (auto x = cmmod::lift_parameter(res, height))
                    lifts.insert(to_string(*x));
                for (std::size_t i = 0; i < idx.size(); ++i) {
                    auto it = std::next(by_prime.begin(), static_cast<std::ptrdiff_t>(i));
                    if (++idx[i] < it->second.size())
                        break;
                    idx[i] = 0;
                }
            }
        }
        o.results["lifts"] = std::vector<std::string>(lifts.begin(), lifts.end());
        o.results["lift_truncated"] = truncated;
    }
    return o;
}

int exit_for(std::exception const & e, std::ostream & err)
{
    err << "k3: " << e.what() << '\n';
    if (dynamic_cast<UsageError const *>(&e) || dynamic_cast<DomainError const *>(&e) ||
        dynamic_cast<UnsupportedError const *>(&e) || dynamic_cast<InfeasibleError const *>(&e))
        return kUsage;
    if (auto const * inc = dynamic_cast<IncompletenessError const *>(&e))
        err << "k3: " << inc->more_needed() << " more count(s) needed\n";
    return kVerificationFailure;
}

} // namespace

int dispatch(int argc, char const * const * argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Arithmetic of K3 surfaces: point counts, zeta functions, Picard bounds, class groups", "k3"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out_path, "Write the JSON report to this file");
    app.add_option("--jobs", g.jobs, "Worker threads for counting")->check(CLI::Range(1u, 1024u));
    app.add_option("--cache", g.cache, "Count cache file (default: $K3_CACHE)");

    CountArgs ca;
    auto * count_cmd = app.add_subcommand("count", "Point counts over F_p, ..., F_{p^r}");
    count_cmd->add_option("--model", ca.model, "quartic | sextic | diagonal | dwork")
        ->required()
        ->check(CLI::IsMember({"quartic", "sextic", "diagonal", "dwork"}));
    count_cmd->add_option("--coeffs", ca.coeffs, "Coefficients in descending lex monomial order");
    count_cmd->add_option("--lambda", ca.lambda, "Dwork pencil parameter");
    count_cmd->add_option("--p", ca.p, "Characteristic")->required();
    count_cmd->add_option("--r", ca.r, "Count over F_{p^1..p^r}")->check(CLI::PositiveNumber);
    count_cmd->add_flag("--force", ca.force, "Ignore the feasibility guard");
    count_cmd->add_flag("--verify-cache", ca.verify_cache, "Recount cached entries");
    count_cmd->add_option("--work-limit", ca.work_limit, "Feasibility guard in field operations");

    ZetaArgs za;
    auto * zeta_cmd = app.add_subcommand("zeta", "P_2(T) from counts");
    zeta_cmd->add_option("--counts", za.counts, "JSON counts file")->required();
    zeta_cmd->add_option("--known-factor", za.known_factor, "Known factor of P_2, low degree first");
    zeta_cmd->add_option("--degree", za.degree, "Degree of P_2");

    PicardArgs pa;
    auto * picard_cmd = app.add_subcommand("picard", "Picard bound from P_2");
    picard_cmd->add_option("--p2", pa.p2, "P_2 coefficients, low degree first")->required();
    picard_cmd->add_option("--q", pa.q, "Field size")->required();
    picard_cmd->add_option("--degree", pa.degree, "Declared degree of P_2");
    picard_cmd->add_flag("--artin-tate", pa.artin_tate, "Evaluate the Artin-Tate expression");
    picard_cmd->add_option("--rho", pa.rho, "Multiplicity of the eigenvalue q");

    BqfArgs ba;
    auto * bqf_cmd = app.add_subcommand("bqf", "Binary quadratic forms");
    bqf_cmd->require_subcommand(1);
    auto * reduce_cmd = bqf_cmd->add_subcommand("reduce", "Reduce a positive definite form");
    reduce_cmd->add_option("--form", ba.form, "a,b,c")->required();
    auto * cg_cmd = bqf_cmd->add_subcommand("classgroup", "Class group of discriminant d");
    cg_cmd->add_option("--d", ba.d, "Negative discriminant")->required();
    auto * compose_cmd = bqf_cmd->add_subcommand("compose", "Gauss composition");
    compose_cmd->add_option("--f", ba.f, "a,b,c")->required();
    compose_cmd->add_option("--g", ba.g, "a,b,c")->required();
    auto * h1_cmd = bqf_cmd->add_subcommand("h1list", "Discriminants of class number one");
    h1_cmd->add_option("--bound", ba.bound, "Largest |d|")->required();

    InoseArgs ia;
    auto * inose_cmd = app.add_subcommand("inose", "Periods, j-invariants and Inose pencil of a singular K3");
    inose_cmd->add_option("--form", ia.form, "a,b,c")->required();
    inose_cmd->add_option("--precision", ia.precision, "Digits of j");

    KuwataArgs ka;
    auto * kuwata_cmd = app.add_subcommand("kuwata", "Fibers and Mordell-Weil rank of a base change");
    kuwata_cmd->add_option("--n", ka.n, "Base change degree 1..6")->required();
    kuwata_cmd->add_option("--relation", ka.relation, "not-isogenous | isogenous-no-cm | isogenous-cm")->required();
    kuwata_cmd->add_flag("--isomorphic", ka.isomorphic, "E and E' isomorphic");

    std::string mod_primes;
    auto * mod_cmd = app.add_subcommand("modularity", "Fermat quartic counts against eta(4 tau)^6");
    mod_cmd->add_option("--primes", mod_primes, "3..37 or 3,5,7")->required();

    SieveArgs sa;
    auto * sieve_cmd = app.add_subcommand("sieve", "CM-parameter sieve");
    sieve_cmd->add_option("--family", sa.family, "Family (dwork)");
    sieve_cmd->add_option("--target", sa.target, "Target form (eta4_6)");
    sieve_cmd->add_option("--primes", sa.primes, "Prime list")->required();
    sieve_cmd->add_flag("--lift", sa.lift, "Lift residue combinations to rationals");
    sieve_cmd->add_option("--height", sa.height, "Height bound for lifting");
    sieve_cmd->add_option("--h-bound", sa.h_bound, "Bound on |h|");

    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const & e) {
        int code = app.exit(e, out, err);
        if (code == 0)
            return kOk;
        err << app.help();
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string command;
    Outcome o;
    try {
        if (count_cmd->parsed()) {
            command = "count";
            o = run_count(ca, g);
        }
        else if (zeta_cmd->parsed()) {
            command = "zeta";
            o = run_zeta(za);
        }
        else if (picard_cmd->parsed()) {
            command = "picard";
            o = run_picard(pa);
        }
        else if (bqf_cmd->parsed()) {
            if (reduce_cmd->parsed()) {
                command = "bqf reduce";
                o = run_bqf_reduce(ba);
            }
            else if (cg_cmd->parsed()) {
                command = "bqf classgroup";
                o = run_bqf_classgroup(ba);
            }
            else if (compose_cmd->parsed()) {
                command = "bqf compose";
                o = run_bqf_compose(ba);
            }
            else {
                command = "bqf h1list";
                o = run_bqf_h1list(ba);
            }
        }
        else if (inose_cmd->parsed()) {
            command = "inose";
            o = run_inose(ia);
        }
        else if (kuwata_cmd->parsed()) {
            command = "kuwata";
            o = run_kuwata(ka);
        }
        else if (mod_cmd->parsed()) {
            command = "modularity";
            o = run_modularity(mod_primes, g);
        }
        else {
            command = "sieve";
            o = run_sieve(sa, g);
        }
    }
    catch (std::exception const & e) {
        return exit_for(e, err);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text = make_report(command, o.config, o.results, seconds, o.cache).dump(2) + "\n";
    if (g.out_path.empty()) {
        out << text;
    }
    else {
        std::ofstream f(g.out_path);
        if (!(f << text)) {
            err << "k3: cannot write " << g.out_path << '\n';
            return kUsage;
        }
    }
    if (!o.verified) {
        err << "k3: verification failed\n";
        return kVerificationFailure;
    }
    return kOk;
}

int dispatch(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    std::vector<char const *> argv{"k3"};
    for (auto const & a : args)
        argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace k3::cli
