#include "k3arith/count.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

#include "k3arith/error.hpp"

namespace k3::count {

namespace {

using ff::FieldCtx;
using ff::FieldPtr;
using ff::GaussianInteger;

constexpr std::int64_t kZero = FieldCtx::kZeroLog;

void gen_monomials(int nvars, int degree, int var, Exponents & cur, std::vector<Exponents> & out)
{
    if (var == nvars - 1) {
        cur[var] = degree;
        out.push_back(cur);
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur[var] = e;
        gen_monomials(nvars, degree - e, var + 1, cur, out);
    }
}

struct Term {
    std::vector<int> exps;
    std::int64_t coeff_log;
};

// Homogeneous polynomial with coefficients as discrete logs, ready for
// table-driven evaluation.
struct LogPoly {
    int nvars;
    int degree;
    std::vector<Term> terms;
};

LogPoly to_log_poly(std::span<const std::int64_t> coeffs, int nvars, int degree, FieldCtx const & f)
{
    auto mons = monomial_order(nvars, degree);
    LogPoly out{nvars, degree, {}};
    for (std::size_t i = 0; i < mons.size(); ++i) {
        std::int64_t c = mod(coeffs[i], f.p());
        if (c == 0)
            continue;
        out.terms.push_back({mons[i], f.log(c)});
    }
    return out;
}

LogPoly to_log_poly(std::vector<ff::FieldElement> const & coeffs, int nvars, int degree, FieldCtx const & f)
{
    auto mons = monomial_order(nvars, degree);
    if (coeffs.size() != mons.size())
        throw UsageError("expected " + std::to_string(mons.size()) + " coefficients, got " + std::to_string(coeffs.size()));
    LogPoly out{nvars, degree, {}};
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (coeffs[i].ctx().get() != &f)
            throw UsageError("coefficient from a different field");
        if (!coeffs[i].is_zero())
            out.terms.push_back({mons[i], f.log(coeffs[i].index())});
    }
    return out;
}

enum class Functional { zero_count, double_cover };

/*
 * Sum of a point functional over P^(n-1)(F_q) for a homogeneous polynomial.
 * Stratum k fixes x_k = 1 and x_j = 0 for j < k; the free coordinates after
 * x_k split into "outer" ones (enumerated and chunked across threads) and
 * the last one, for which the polynomial is collapsed to a univariate
 * c_0 + c_1 x + ... and evaluated for every x with Zech logarithms.
 */
class Engine {
  public:
    Engine(LogPoly poly, FieldCtx const & f, Functional fn)
        : poly_(std::move(poly)), f_(f), fn_(fn), L_(f.q() - 1), log_(f.log_table()), zech_(f.zech_table())
    {
    }

    std::int64_t run(CountOptions const & opts) const
    {
        std::int64_t total = 0;
        for (int k = 0; k < poly_.nvars; ++k)
            total += stratum(k, opts);
        return total;
    }

  private:
    std::int64_t add(std::int64_t a, std::int64_t b) const
    {
        if (a == kZero)
            return b;
        if (b == kZero)
            return a;
        std::int64_t d = b - a;
        if (d < 0)
            d += L_;
        std::int64_t z = zech_[static_cast<std::size_t>(d)];
        if (z == kZero)
            return kZero;
        std::int64_t s = a + z;
        return s >= L_ ? s - L_ : s;
    }

    std::int64_t weight(std::int64_t value_log) const
    {
        if (fn_ == Functional::zero_count)
            return value_log == kZero ? 1 : 0;
        if (value_log == kZero)
            return 1;
        return value_log % 2 == 0 ? 2 : 0;
    }

    std::int64_t stratum(int k, CountOptions const & opts) const
    {
        const int n = poly_.nvars;
        const int free_vars = n - 1 - k;
        std::vector<Term> live;
        for (auto const & t : poly_.terms) {
            bool ok = true;
            for (int j = 0; j < k; ++j)
                ok = ok && t.exps[j] == 0;
            if (ok)
                live.push_back(t);
        }
        if (free_vars == 0) {
            std::int64_t v = kZero;
            for (auto const & t : live)
                v = add(v, t.coeff_log);
            return weight(v);
        }

        const int outer_vars = free_vars - 1;
        const int first_outer = k + 1;
        const int last = n - 1;
        const std::int64_t q = f_.q();
        std::int64_t outer_count = 1;
        for (int i = 0; i < outer_vars; ++i)
            outer_count *= q;

        auto eval_range = [&](std::int64_t lo, std::int64_t hi) {
            std::int64_t sub = 0;
            std::vector<std::int64_t> lg(static_cast<std::size_t>(n), 0);
            std::vector<std::int64_t> c(static_cast<std::size_t>(poly_.degree + 1));
            std::vector<std::pair<std::int64_t, std::int64_t>> nz; // (e mod q-1, log c_e)
            for (std::int64_t t = lo; t < hi; ++t) {
                std::int64_t rest = t;
                for (int i = outer_vars - 1; i >= 0; --i) {
                    lg[static_cast<std::size_t>(first_outer + i)] = log_[static_cast<std::size_t>(rest % q)];
                    rest /= q;
                }
                std::fill(c.begin(), c.end(), kZero);
                for (auto const & term : live) {
                    std::int64_t v = term.coeff_log;
                    for (int j = first_outer; j < last && v != kZero; ++j) {
                        int e = term.exps[static_cast<std::size_t>(j)];
                        if (e == 0)
                            continue;
                        if (lg[static_cast<std::size_t>(j)] == kZero)
                            v = kZero;
                        else
                            v = (v + e * lg[static_cast<std::size_t>(j)]) % L_;
                    }
                    if (v != kZero) {
                        auto & slot = c[static_cast<std::size_t>(term.exps[static_cast<std::size_t>(last)])];
                        slot = add(slot, v);
                    }
                }
                sub += weight(c[0]);
                nz.clear();
                for (int e = 0; e <= poly_.degree; ++e) {
                    if (c[static_cast<std::size_t>(e)] != kZero)
                        nz.emplace_back(e % L_, c[static_cast<std::size_t>(e)]);
                }
                // x = g^l for l = 0 .. q-2; track each c_e + e l incrementally.
                std::vector<std::int64_t> cur(nz.size());
                for (std::size_t i = 0; i < nz.size(); ++i)
                    cur[i] = nz[i].second;
                for (std::int64_t l = 0; l < L_; ++l) {
                    std::int64_t v = kZero;
                    for (std::size_t i = 0; i < nz.size(); ++i) {
                        v = add(v, cur[i]);
                        cur[i] += nz[i].first;
                        if (cur[i] >= L_)
                            cur[i] -= L_;
                    }
                    sub += weight(v);
                }
            }
            return sub;
        };

        const unsigned jobs = std::max(1u, opts.jobs);
        std::size_t chunks = opts.chunks_per_job == 0 ? 8 : opts.chunks_per_job;
        std::int64_t nchunks = std::min<std::int64_t>(outer_count, static_cast<std::int64_t>(chunks * jobs));
        if (jobs == 1 || nchunks <= 1)
            return eval_range(0, outer_count);

        std::vector<std::int64_t> subtotals(static_cast<std::size_t>(nchunks), 0);
        std::atomic<std::int64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= nchunks)
                    return;
                std::int64_t lo = outer_count * i / nchunks;
                std::int64_t hi = outer_count * (i + 1) / nchunks;
                subtotals[static_cast<std::size_t>(i)] = eval_range(lo, hi);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto & th : pool)
            th.join();
        std::int64_t total = 0;
        for (auto s : subtotals)
            total += s;
        return total;
    }

    LogPoly poly_;
    FieldCtx const & f_;
    Functional fn_;
    std::int64_t L_;
    std::span<const std::int32_t> log_;
    std::span<const std::int32_t> zech_;
};

void require_tables(FieldCtx const & f)
{
    if (!f.has_tables())
        throw UnsupportedError("direct counting needs log tables, q = " + std::to_string(f.q()) + " is too large");
}

// Square root in Z[i] of mu with |mu| = q^2 (pure Jacobi sums over F_{q^2}).
GaussianInteger gaussian_sqrt(GaussianInteger const & mu, std::int64_t q)
{
    const std::int64_t re = mu.coeffs()[0];
    const std::int64_t q2 = q * q;
    if (re > q2 || re < -q2)
        throw VerificationError("Jacobi sum over F_{q^2} has the wrong absolute value");
    std::int64_t a = isqrt((re + q2) / 2);
    std::int64_t b = isqrt((q2 - re) / 2);
    for (std::int64_t sa : {a, -a}) {
        for (std::int64_t sb : {b, -b}) {
            GaussianInteger s = ff::gaussian(sa, sb);
            if (s * s == mu)
                return s;
        }
    }
    throw VerificationError("Jacobi sum over F_{q^2} has no square root in Z[i]");
}

using Tuple = std::array<int, 4>;

std::vector<Tuple> character_tuples()
{
    std::vector<Tuple> out;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c)
                for (int d = 1; d <= 3; ++d)
                    if ((a + b + c + d) % 4 == 0)
                        out.push_back({a, b, c, d});
    return out;
}

/*
 * Eigenvalue attached to the character tuple (chi^i0, .., chi^i3) of the
 * quartic character chi of F_q:
 *   prod chi^ik(a_k^-1) * chi^i3(-1) * J(chi^i0, chi^i1, chi^i2),
 * with the triple Jacobi sum split as J(chi0, chi1) J(chi0 chi1, chi2), or
 * chi0(-1) q when chi0 chi1 is trivial. Requires 4 | q - 1.
 */
class QuarticEigen {
  public:
    QuarticEigen(FieldPtr ctx, std::array<ff::FieldElement, 4> const & a) : ctx_(std::move(ctx)), chi_(ctx_, 4, 1)
    {
        auto minus_one = ff::FieldElement::from_int(ctx_, -1);
        neg_one_ = *chi_.value_exponent(minus_one);
        for (std::size_t k = 0; k < 4; ++k)
            a_exp_[k] = *chi_.value_exponent(a[k]);
    }

    GaussianInteger operator()(Tuple const & t)
    {
        std::int64_t e = static_cast<std::int64_t>(t[3]) * neg_one_;
        for (int k = 0; k < 4; ++k)
            e -= static_cast<std::int64_t>(t[static_cast<std::size_t>(k)]) * a_exp_[static_cast<std::size_t>(k)];
        GaussianInteger twist = GaussianInteger::root_of_unity(4, mod(e, 4));
        GaussianInteger j3(4);
        if ((t[0] + t[1]) % 4 == 0) {
            j3 = GaussianInteger::root_of_unity(4, mod(static_cast<std::int64_t>(t[0]) * neg_one_, 4)) *
                 GaussianInteger::integer(4, ctx_->q());
        }
        else {
            j3 = pair(t[0], t[1]) * pair((t[0] + t[1]) % 4, t[2]);
        }
        return twist * j3;
    }

  private:
    GaussianInteger const & pair(int i, int j)
    {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, ff::jacobi_sum(ff::MultChar(ctx_, 4, i), ff::MultChar(ctx_, 4, j))).first;
        return it->second;
    }

    FieldPtr ctx_;
    ff::MultChar chi_;
    int neg_one_ = 0;
    std::array<int, 4> a_exp_{};
    std::map<std::pair<int, int>, GaussianInteger> cache_;
};

std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::vector<Exponents> monomial_order(int nvars, int degree)
{
    if (nvars < 1 || degree < 0)
        throw UsageError("monomial_order needs nvars >= 1 and degree >= 0");
    std::vector<Exponents> out;
    Exponents cur(static_cast<std::size_t>(nvars), 0);
    gen_monomials(nvars, degree, 0, cur, out);
    return out;
}

std::size_t monomial_index(Exponents const & exps)
{
    int degree = 0;
    for (int e : exps)
        degree += e;
    auto mons = monomial_order(static_cast<int>(exps.size()), degree);
    auto it = std::find(mons.begin(), mons.end(), exps);
    return static_cast<std::size_t>(it - mons.begin());
}

Quartic to_quartic(DiagonalQuartic const & s)
{
    Quartic out;
    for (int k = 0; k < 4; ++k) {
        Exponents e(4, 0);
        e[static_cast<std::size_t>(k)] = 4;
        out.coeffs[monomial_index(e)] = s.coeffs[static_cast<std::size_t>(k)];
    }
    return out;
}

Quartic to_quartic(PencilMember const & s)
{
    Quartic out = to_quartic(DiagonalQuartic{});
    out.coeffs[monomial_index({1, 1, 1, 1})] = -s.lambda;
    return out;
}

Quartic fermat_quartic()
{
    return to_quartic(DiagonalQuartic{});
}

std::string canonical_serialization(SurfaceModel const & s)
{
    auto join = [](auto const & coeffs) {
        std::string out = "[";
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(coeffs[i]);
        }
        return out + "]";
    };
    return std::visit(
        [&](auto const & m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DoubleSextic>)
                return "sextic" + join(m.coeffs);
            else if constexpr (std::is_same_v<T, Quartic>)
                return "quartic" + join(m.coeffs);
            else
                return "quartic" + join(to_quartic(m).coeffs);
        },
        s);
}

std::string surface_hash(SurfaceModel const & s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canonical_serialization(s)) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return hex64(h);
}

std::int64_t count_quartic(Quartic const & s, FieldPtr const & ctx, CountOptions const & opts)
{
    require_tables(*ctx);
    Engine engine(to_log_poly(s.coeffs, 4, 4, *ctx), *ctx, Functional::zero_count);
    return engine.run(opts);
}

std::int64_t count_quartic(std::vector<ff::FieldElement> const & coeffs, CountOptions const & opts)
{
    if (coeffs.empty())
        throw UsageError("quartic needs 35 coefficients");
    FieldCtx const & f = *coeffs[0].ctx();
    require_tables(f);
    Engine engine(to_log_poly(coeffs, 4, 4, f), f, Functional::zero_count);
    return engine.run(opts);
}

std::int64_t count_double_sextic(DoubleSextic const & s, FieldPtr const & ctx, CountOptions const & opts)
{
    if (ctx->p() == 2)
        throw UnsupportedError("double sextic counts need odd q");
    require_tables(*ctx);
    Engine engine(to_log_poly(s.coeffs, 3, 6, *ctx), *ctx, Functional::double_cover);
    return engine.run(opts);
}

DiagonalCount count_diagonal_quartic_jacobi(DiagonalQuartic const & s, FieldPtr const & ctx)
{
    const std::int64_t p = ctx->p();
    for (auto a : s.coeffs) {
        if (mod(a, p) == 0)
            throw UnsupportedError("characteristic " + std::to_string(p) + " divides a diagonal coefficient");
    }
    std::array<ff::FieldElement, 4> a{ff::FieldElement::from_int(ctx, s.coeffs[0]), ff::FieldElement::from_int(ctx, s.coeffs[1]),
                                      ff::FieldElement::from_int(ctx, s.coeffs[2]), ff::FieldElement::from_int(ctx, s.coeffs[3])};
    return count_diagonal_quartic_jacobi(a);
}

DiagonalCount count_diagonal_quartic_jacobi(std::array<ff::FieldElement, 4> const & coeffs)
{
    FieldPtr const & ctx = coeffs[0].ctx();
    const std::int64_t p = ctx->p();
    const std::int64_t q = ctx->q();
    if (p == 2)
        throw UnsupportedError("Jacobi path needs odd characteristic");
    for (auto const & a : coeffs) {
        if (a.ctx() != ctx)
            throw UsageError("diagonal coefficients from different fields");
        if (a.is_zero())
            throw UnsupportedError("zero diagonal coefficient");
    }

    DiagonalCount out;
    out.eigenvalues.push_back(GaussianInteger::integer(4, q));
    const auto tuples = character_tuples();

    if (q % 4 == 1) {
        QuarticEigen eig(ctx, coeffs);
        for (auto const & t : tuples)
            out.eigenvalues.push_back(eig(t));
    }
    else {
        // No quartic characters on F_q. Frobenius swaps the eigenlines of a
        // tuple and its conjugate, so on that plane it squares to the F_{q^2}
        // eigenvalue mu and has eigenvalues +-sqrt(mu). The all-quadratic
        // tuple is defined over F_q already. Every element of F_q^* is a
        // fourth power in F_{q^2} when q = 3 mod 4, so mu does not see the
        // coefficients and the surface is computed as the Fermat quartic.
        int prod = 1;
        for (auto const & a : coeffs)
            prod *= ff::quadratic_character(a);
        auto ctx2 = FieldCtx::create(p, 2 * ctx->degree());
        auto one2 = ff::FieldElement::one(ctx2);
        QuarticEigen eig2(ctx2, {one2, one2, one2, one2});
        std::map<Tuple, GaussianInteger> values;
        for (auto const & t : tuples) {
            if (values.count(t))
                continue;
            Tuple conj{(4 - t[0]) % 4, (4 - t[1]) % 4, (4 - t[2]) % 4, (4 - t[3]) % 4};
            if (t == conj) {
                values.emplace(t, GaussianInteger::integer(4, prod * q));
                continue;
            }
            GaussianInteger root = gaussian_sqrt(eig2(t), q);
            values.emplace(t, root);
            values.emplace(conj, -root);
        }
        for (auto const & t : tuples)
            out.eigenvalues.push_back(values.at(t));
    }

    GaussianInteger trace = GaussianInteger::integer(4, 1 + q * q);
    for (auto const & e : out.eigenvalues)
        trace = trace + e;
    if (!trace.is_integer())
        throw VerificationError("diagonal quartic eigenvalues do not sum to an integer");
    out.count = trace.as_integer();
    return out;
}

std::int64_t count_direct(SurfaceModel const & s, FieldPtr const & ctx, CountOptions const & opts)
{
    return std::visit(
        [&](auto const & m) -> std::int64_t {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DoubleSextic>)
                return count_double_sextic(m, ctx, opts);
            else if constexpr (std::is_same_v<T, Quartic>)
                return count_quartic(m, ctx, opts);
            else
                return count_quartic(to_quartic(m), ctx, opts);
        },
        s);
}

bool weil_bound_holds(std::int64_t n, std::int64_t q)
{
    const std::int64_t t = n - 1 - q * q;
    return t <= 22 * q && t >= -22 * q;
}

bool dwork_is_singular(FieldPtr const & ctx, std::int64_t lambda)
{
    const std::int64_t p = ctx->p();
    if (p == 2)
        return true;
    const std::int64_t l = mod(lambda, p);
    return mod(powmod(l, 4, p) - 256, p) == 0;
}

std::optional<bool> known_smooth(SurfaceModel const & s, std::int64_t p)
{
    if (auto const * d = std::get_if<DiagonalQuartic>(&s)) {
        if (p == 2)
            return false;
        for (auto a : d->coeffs) {
            if (mod(a, p) == 0)
                return false;
        }
        return true;
    }
    if (auto const * m = std::get_if<PencilMember>(&s))
        return !dwork_is_singular(FieldCtx::create(p, 1), m->lambda);
    return std::nullopt;
}

bool has_rational_singular_point(Quartic const & s, FieldPtr const & ctx)
{
    require_tables(*ctx);
    auto const & f = *ctx;
    const std::int64_t p = f.p();
    const std::int64_t q = f.q();
    const std::int64_t L = q - 1;
    auto mons = monomial_order(4, 4);

    // F and its four partials, each as (exponents, coefficient index) terms.
    std::array<std::vector<std::pair<Exponents, std::int64_t>>, 5> polys;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        std::int64_t c = mod(s.coeffs[i], p);
        if (c == 0)
            continue;
        polys[0].emplace_back(mons[i], c);
        for (int v = 0; v < 4; ++v) {
            int e = mons[i][static_cast<std::size_t>(v)];
            std::int64_t dc = mod(c * e, p);
            if (dc == 0)
                continue;
            Exponents de = mons[i];
            de[static_cast<std::size_t>(v)] -= 1;
            polys[static_cast<std::size_t>(v + 1)].emplace_back(de, dc);
        }
    }
    auto eval = [&](auto const & poly, std::array<std::int64_t, 4> const & lg) {
        std::int64_t acc = 0;
        for (auto const & [ex, c] : poly) {
            std::int64_t v = f.log(c);
            for (int j = 0; j < 4 && v != kZero; ++j) {
                int e = ex[static_cast<std::size_t>(j)];
                if (e == 0)
                    continue;
                v = lg[static_cast<std::size_t>(j)] == kZero ? kZero : (v + e * lg[static_cast<std::size_t>(j)]) % L;
            }
            if (v != kZero)
                acc = f.add_index(acc, f.exp(v));
        }
        return acc;
    };

    for (int k = 0; k < 4; ++k) {
        const int nfree = 3 - k;
        std::int64_t total = 1;
        for (int i = 0; i < nfree; ++i)
            total *= q;
        for (std::int64_t t = 0; t < total; ++t) {
            std::array<std::int64_t, 4> lg{kZero, kZero, kZero, kZero};
            lg[static_cast<std::size_t>(k)] = 0;
            std::int64_t rest = t;
            for (int j = 3; j > k; --j) {
                lg[static_cast<std::size_t>(j)] = f.log(rest % q);
                rest /= q;
            }
            bool singular = true;
            for (auto const & poly : polys) {
                if (eval(poly, lg) != 0) {
                    singular = false;
                    break;
                }
            }
            if (singular)
                return true;
        }
    }
    return false;
}

std::int64_t CountRecord::q() const
{
    return checked_pow(p, r);
}

std::optional<std::int64_t> CountCache::lookup(std::string const & surface, std::int64_t p, int r) const
{
    std::lock_guard lock(mu_);
    auto it = store_.find(Key{surface, p, r});
    if (it == store_.end())
        return std::nullopt;
    return it->second;
}

bool CountCache::insert(CountRecord const & rec)
{
    std::lock_guard lock(mu_);
    auto [it, fresh] = store_.emplace(Key{rec.surface, rec.p, rec.r}, rec.count);
    if (!fresh && it->second != rec.count)
        throw IntegrityError("conflicting counts for surface " + rec.surface + " over F_" + std::to_string(rec.p) + "^" +
                             std::to_string(rec.r) + ": " + std::to_string(it->second) + " vs " +
                             std::to_string(rec.count));
    return fresh;
}

std::vector<CountRecord> CountCache::records() const
{
    std::lock_guard lock(mu_);
    std::vector<CountRecord> out;
    for (auto const & [key, n] : store_)
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), n});
    return out;
}

std::size_t CountCache::size() const
{
    std::lock_guard lock(mu_);
    return store_.size();
}

std::size_t CountCache::hits() const
{
    std::lock_guard lock(mu_);
    return hits_;
}

std::size_t CountCache::misses() const
{
    std::lock_guard lock(mu_);
    return misses_;
}

void CountCache::note_hit() const
{
    std::lock_guard lock(mu_);
    ++hits_;
}

void CountCache::note_miss() const
{
    std::lock_guard lock(mu_);
    ++misses_;
}

double estimated_work(SurfaceModel const & s, std::int64_t q)
{
    const double dq = static_cast<double>(q);
    if (std::holds_alternative<DoubleSextic>(s))
        return 7.0 * dq * dq;
    return 5.0 * dq * dq * dq;
}

std::vector<CountRecord> count_tower(SurfaceModel const & s, std::int64_t p, int r_max, TowerOptions const & opts,
                                     CountCache * cache)
{
    if (r_max < 1)
        throw UsageError("r_max must be at least 1");
    if (!is_prime(p))
        throw UsageError(std::to_string(p) + " is not prime");
    const std::string hash = surface_hash(s);
    auto const * diag = std::get_if<DiagonalQuartic>(&s);
    const bool smooth = known_smooth(s, p).value_or(false);
    const bool jacobi = diag != nullptr && smooth;

    // Refuse before doing any work.
    double work = 0.0;
    for (int r = 1; r <= r_max; ++r) {
        const std::int64_t q = checked_pow(p, r);
        if (q >= (std::int64_t{1} << 31))
            throw InfeasibleError("q = " + std::to_string(p) + "^" + std::to_string(r) + " exceeds supported field size",
                                  estimated_work(s, q));
        bool cached = cache != nullptr && cache->lookup(hash, p, r).has_value() && !opts.verify_cache;
        if (!cached && !jacobi)
            work += estimated_work(s, q);
    }
    if (work > opts.work_limit && !opts.force) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", work);
        throw InfeasibleError(std::string("count tower needs about ") + buf + " field operations; pass force to run it",
                              work);
    }

    std::vector<CountRecord> out;
    for (int r = 1; r <= r_max; ++r) {
        std::optional<std::int64_t> hit = cache ? cache->lookup(hash, p, r) : std::nullopt;
        const bool have = hit.has_value();
        const std::int64_t cached = hit.value_or(-1);
        if (have && !opts.verify_cache) {
            cache->note_hit();
            out.push_back({hash, p, r, cached});
            continue;
        }
        auto ctx = FieldCtx::create(p, r);
        std::int64_t n = jacobi ? count_diagonal_quartic_jacobi(*diag, ctx).count : count_direct(s, ctx, opts.count);
        if (smooth && !weil_bound_holds(n, ctx->q()))
            throw DataError("count " + std::to_string(n) + " over F_" + std::to_string(ctx->q()) +
                            " violates the Weil bound for a smooth K3");
        CountRecord rec{hash, p, r, n};
        if (cache) {
            if (have && cached != n)
                throw IntegrityError("cached count " + std::to_string(cached) + " for surface " + hash + " over F_" +
                                     std::to_string(ctx->q()) + " disagrees with recount " + std::to_string(n));
            cache->note_miss();
            cache->insert(rec);
        }
        out.push_back(rec);
    }
    return out;
}

} // namespace k3::count
