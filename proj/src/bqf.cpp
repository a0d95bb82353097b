#include "k3arith/bqf.hpp"

#include <algorithm>
#include <sstream>

#include "k3arith/error.hpp"
#include "k3arith/numtheory.hpp"

namespace k3::bqf {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw UsageError("quadratic form coefficient overflows 64 bits");
    return static_cast<std::int64_t>(v);
}

void require_definite(BinaryQuadraticForm const & f)
{
    if (!f.is_positive_definite())
        throw DomainError("form " + to_string(f) + " is not positive definite");
}

} // namespace

std::int64_t BinaryQuadraticForm::discriminant() const
{
    return narrow(static_cast<i128>(b) * b - static_cast<i128>(4) * a * c);
}

bool BinaryQuadraticForm::is_positive_definite() const
{
    return a > 0 && c > 0 && static_cast<i128>(b) * b - static_cast<i128>(4) * a * c < 0;
}

bool BinaryQuadraticForm::is_primitive() const
{
    return gcd(gcd(a, b), c) == 1;
}

bool BinaryQuadraticForm::is_reduced() const
{
    return is_positive_definite() && -a < b && b <= a && a <= c && !(a == c && b < 0);
}

std::ostream & operator<<(std::ostream & os, BinaryQuadraticForm const & f)
{
    return os << '(' << f.a << ',' << f.b << ',' << f.c << ')';
}

std::string to_string(BinaryQuadraticForm const & f)
{
    std::ostringstream os;
    os << f;
    return os.str();
}

BinaryQuadraticForm parse_form(std::string_view text)
{
    std::string s(text);
    for (char & ch : s) {
        if (ch == ',' || ch == '(' || ch == ')')
            ch = ' ';
    }
    std::istringstream is(s);
    BinaryQuadraticForm f;
    std::string rest;
    if (!(is >> f.a >> f.b >> f.c) || (is >> rest))
        throw UsageError("expected a form as a,b,c but got '" + std::string(text) + "'");
    return f;
}

BinaryQuadraticForm reduce(BinaryQuadraticForm f)
{
    require_definite(f);
    const i128 d = f.discriminant();
    for (;;) {
        // b into (-a, a]
        i128 two_a = static_cast<i128>(2) * f.a;
        i128 b = f.b % two_a;
        if (b <= -f.a)
            b += two_a;
        else if (b > f.a)
            b -= two_a;
        f.b = narrow(b);
        f.c = narrow((b * b - d) / (4 * static_cast<i128>(f.a)));
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        if (f.b == -f.a)
            f.b = f.a;
        return f;
    }
}

bool is_isomorphic_singular_k3(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g)
{
    return reduce(f) == reduce(g);
}

bool is_gl2_equivalent(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g)
{
    auto rf = reduce(f);
    return rf == reduce(g) || rf == reduce(g.conjugate());
}

BinaryQuadraticForm principal_form(std::int64_t d)
{
    if (!is_discriminant(d))
        throw DomainError("invalid negative discriminant " + std::to_string(d));
    const std::int64_t b = mod(d, 2);
    return {1, b, (b - d) / 4};
}

BinaryQuadraticForm compose(BinaryQuadraticForm const & f, BinaryQuadraticForm const & g)
{
    require_definite(f);
    require_definite(g);
    if (!f.is_primitive() || !g.is_primitive())
        throw DomainError("composition needs primitive forms");
    const std::int64_t disc = f.discriminant();
    if (disc != g.discriminant())
        throw DomainError("composition of forms with different discriminants " + std::to_string(disc) + " and " +
                          std::to_string(g.discriminant()));

    // Shanks/Dirichlet united-form composition (Cohen, Alg. 5.4.7).
    BinaryQuadraticForm f1 = f, f2 = g;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    const std::int64_t s = (f1.b + f2.b) / 2;
    const std::int64_t n = f2.b - s;
    std::int64_t y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    }
    else {
        auto e = xgcd(f2.a, f1.a);
        y1 = e.x;
        d = e.g;
    }
    std::int64_t x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    }
    else {
        auto e = xgcd(s, d);
        x2 = e.x;
        y2 = -e.y;
        d1 = e.g;
    }
    const i128 v1 = f1.a / d1;
    const i128 v2 = f2.a / d1;
    i128 r = (static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * f2.c % v1) % v1;
    if (r < 0)
        r += v1;
    BinaryQuadraticForm h;
    h.a = narrow(v1 * v2);
    h.b = narrow(f2.b + 2 * v2 * r);
    h.c = narrow((static_cast<i128>(h.b) * h.b - disc) / (4 * static_cast<i128>(h.a)));
    return reduce(h);
}

BinaryQuadraticForm scale(BinaryQuadraticForm const & f, std::int64_t n)
{
    if (n < 1)
        throw UsageError("lattice scaling factor must be positive");
    return {narrow(static_cast<i128>(f.a) * n), narrow(static_cast<i128>(f.b) * n), narrow(static_cast<i128>(f.c) * n)};
}

bool is_discriminant(std::int64_t d)
{
    return d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1);
}

std::vector<BinaryQuadraticForm> reduced_forms(std::int64_t d)
{
    if (!is_discriminant(d))
        throw DomainError("invalid negative discriminant " + std::to_string(d) + " (need d < 0, d = 0,1 mod 4)");
    std::vector<BinaryQuadraticForm> out;
    const i128 absd = -static_cast<i128>(d);
    for (std::int64_t a = 1; 3 * static_cast<i128>(a) * a <= absd; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            i128 num = static_cast<i128>(b) * b - d;
            if (num % (4 * static_cast<i128>(a)) != 0)
                continue;
            BinaryQuadraticForm f{a, b, narrow(num / (4 * static_cast<i128>(a)))};
            if (f.is_reduced() && f.is_primitive())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](BinaryQuadraticForm const & x, BinaryQuadraticForm const & y) {
        auto key = [](BinaryQuadraticForm const & f) { return std::tuple(f.a, f.b < 0 ? -f.b : f.b, f.b < 0); };
        return key(x) < key(y);
    });
    return out;
}

std::size_t class_number(std::int64_t d)
{
    return reduced_forms(d).size();
}

std::vector<std::int64_t> class_number_one_discriminants(std::int64_t bound)
{
    if (bound < 3)
        throw UsageError("class number one search needs bound >= 3");
    std::vector<std::int64_t> out;
    for (std::int64_t d = -3; d >= -bound; --d) {
        if (is_discriminant(d) && class_number(d) == 1)
            out.push_back(d);
    }
    return out;
}

ClassGroup::ClassGroup(std::int64_t d) : d_(d), forms_(reduced_forms(d))
{
    const std::size_t h = forms_.size();
    table_.assign(h, std::vector<std::size_t>(h, 0));
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j)
            table_[i][j] = index_of(compose(forms_[i], forms_[j]));
    }
}

std::size_t ClassGroup::index_of(BinaryQuadraticForm const & f) const
{
    auto rf = reduce(f);
    auto it = std::find(forms_.begin(), forms_.end(), rf);
    if (it == forms_.end())
        throw DomainError("form " + to_string(f) + " is not a primitive form of discriminant " + std::to_string(d_));
    return static_cast<std::size_t>(it - forms_.begin());
}

std::size_t ClassGroup::element_order(std::size_t i) const
{
    std::size_t k = 1, cur = i;
    while (cur != identity()) {
        cur = table_[cur][i];
        ++k;
    }
    return k;
}

std::size_t ClassGroup::exponent() const
{
    std::int64_t e = 1;
    for (std::size_t i = 0; i < order(); ++i)
        e = lcm(e, static_cast<std::int64_t>(element_order(i)));
    return static_cast<std::size_t>(e);
}

bool ClassGroup::is_abelian() const
{
    for (std::size_t i = 0; i < order(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (table_[i][j] != table_[j][i])
                return false;
        }
    }
    return true;
}

} // namespace k3::bqf
