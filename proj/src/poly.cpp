#include "k3arith/poly.hpp"

#include <cctype>
#include <sstream>

#include "k3arith/error.hpp"

namespace k3::poly {

void trim(IntPoly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

void trim(RatPoly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int degree(IntPoly const & f)
{
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] != 0)
            return static_cast<int>(i);
    }
    return -1;
}

int degree(RatPoly const & f)
{
    for (std::size_t i = f.size(); i-- > 0;) {
        if (f[i] != 0)
            return static_cast<int>(i);
    }
    return -1;
}

IntPoly add(IntPoly const & f, IntPoly const & g)
{
    IntPoly h(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        h[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i)
        h[i] += g[i];
    trim(h);
    return h;
}

IntPoly sub(IntPoly const & f, IntPoly const & g)
{
    IntPoly h(std::max(f.size(), g.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
        h[i] += f[i];
    for (std::size_t i = 0; i < g.size(); ++i)
        h[i] -= g[i];
    trim(h);
    return h;
}

IntPoly mul(IntPoly const & f, IntPoly const & g)
{
    if (f.empty() || g.empty())
        return {};
    IntPoly h(f.size() + g.size() - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0)
            continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] += f[i] * g[j];
    }
    trim(h);
    return h;
}

IntPoly pow(IntPoly const & f, unsigned e)
{
    IntPoly r{1};
    for (unsigned i = 0; i < e; ++i)
        r = mul(r, f);
    return r;
}

IntPoly scale(IntPoly const & f, BigInt const & c)
{
    IntPoly h(f);
    for (auto & x : h)
        x *= c;
    trim(h);
    return h;
}

std::optional<IntPoly> exact_divide(IntPoly const & f, IntPoly const & g)
{
    int dg = degree(g);
    if (dg < 0)
        throw DomainError("polynomial division by zero");
    int df = degree(f);
    if (df < 0)
        return IntPoly{};
    if (df < dg)
        return std::nullopt;
    IntPoly rem(f.begin(), f.begin() + df + 1);
    IntPoly quot(df - dg + 1);
    BigInt const & lead = g[dg];
    for (int i = df - dg; i >= 0; --i) {
        BigInt const & top = rem[i + dg];
        if (top == 0)
            continue;
        if (top % lead != 0)
            return std::nullopt;
        BigInt c = top / lead;
        quot[i] = c;
        for (int j = 0; j <= dg; ++j)
            rem[i + j] -= c * g[j];
    }
    for (auto const & r : rem) {
        if (r != 0)
            return std::nullopt;
    }
    trim(quot);
    return quot;
}

Rational evaluate(IntPoly const & f, Rational const & x)
{
    Rational acc = 0;
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * x + Rational(f[i]);
    return acc;
}

IntPoly derivative(IntPoly const & f)
{
    if (f.size() <= 1)
        return {};
    IntPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = f[i] * static_cast<long long>(i);
    trim(d);
    return d;
}

RatPoly to_rational(IntPoly const & f)
{
    RatPoly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = Rational(f[i]);
    trim(r);
    return r;
}

namespace {

// Returns {quotient, remainder}.
std::pair<RatPoly, RatPoly> rat_divmod(RatPoly const & f, RatPoly const & g)
{
    int dg = degree(g);
    if (dg < 0)
        throw DomainError("polynomial division by zero");
    RatPoly rem(f);
    trim(rem);
    int df = degree(rem);
    if (df < dg)
        return {RatPoly{}, rem};
    RatPoly quot(df - dg + 1);
    for (int i = df - dg; i >= 0; --i) {
        Rational c = rem[i + dg] / g[dg];
        quot[i] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= dg; ++j)
            rem[i + j] -= c * g[j];
    }
    trim(quot);
    trim(rem);
    return {quot, rem};
}

} // namespace

RatPoly rat_mod(RatPoly const & f, RatPoly const & g)
{
    return rat_divmod(f, g).second;
}

RatPoly rat_div(RatPoly const & f, RatPoly const & g)
{
    return rat_divmod(f, g).first;
}

RatPoly rat_gcd(RatPoly f, RatPoly g)
{
    trim(f);
    trim(g);
    while (!g.empty()) {
        RatPoly r = rat_mod(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        Rational lead = f.back();
        for (auto & c : f)
            c /= lead;
    }
    return f;
}

RatPoly squarefree_kernel(IntPoly const & f)
{
    RatPoly rf = to_rational(f);
    if (degree(rf) <= 0)
        return rf;
    RatPoly g = rat_gcd(rf, to_rational(derivative(f)));
    RatPoly k = rat_div(rf, g);
    Rational lead = k.back();
    for (auto & c : k)
        c /= lead;
    return k;
}

IntPoly cyclotomic(int m)
{
    if (m < 1)
        throw DomainError("cyclotomic index must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    IntPoly f(m + 1);
    f[0] = -1;
    f[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d == 0)
            f = *exact_divide(f, cyclotomic(d));
    }
    return f;
}

std::vector<BigInt> reciprocal_power_sums(IntPoly const & p, std::size_t k)
{
    if (p.empty() || p[0] != 1)
        throw DomainError("reciprocal polynomial must have constant term 1");
    auto coeff = [&](std::size_t i) -> BigInt { return i < p.size() ? p[i] : BigInt(0); };
    std::vector<BigInt> s(k + 1);
    for (std::size_t n = 1; n <= k; ++n) {
        BigInt acc = -BigInt(static_cast<long long>(n)) * coeff(n);
        for (std::size_t i = 1; i < n; ++i)
            acc -= coeff(i) * s[n - i];
        s[n] = acc;
    }
    s.erase(s.begin());
    return s;
}

std::optional<IntPoly> coefficients_from_power_sums(std::span<const BigInt> s)
{
    IntPoly c(s.size() + 1);
    c[0] = 1;
    for (std::size_t n = 1; n <= s.size(); ++n) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= n; ++i)
            acc += s[i - 1] * c[n - i];
        if (acc % static_cast<long long>(n) != 0)
            return std::nullopt;
        c[n] = -acc / static_cast<long long>(n);
    }
    return c;
}

IntPoly parse(std::string_view text)
{
    IntPoly out;
    std::string token;
    auto flush = [&]() {
        if (token.empty())
            return;
        try {
            out.emplace_back(token);
        }
        catch (std::exception const &) {
            throw UsageError("bad polynomial coefficient '" + token + "'");
        }
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == '[' || ch == ']' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else if (ch == '+')
            continue;
        else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-')
            token.push_back(ch);
        else
            throw UsageError(std::string("unexpected character in polynomial: ") + ch);
    }
    flush();
    if (out.empty())
        throw UsageError("empty polynomial");
    return out;
}

std::string format(IntPoly const & f)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < f.size(); ++i)
        os << (i ? "," : "") << f[i];
    os << ']';
    return os.str();
}

} // namespace k3::poly
