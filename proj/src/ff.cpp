#include "k3arith/ff.hpp"

#include <algorithm>
#include <string>

#include "k3arith/error.hpp"
#include "k3arith/poly.hpp"

namespace k3::ff {

namespace {

using Coeffs = std::vector<std::int64_t>;

void trim(Coeffs & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// Remainder of a modulo the monic f over F_p.
Coeffs pmod(Coeffs a, Coeffs const & f, std::int64_t p)
{
    trim(a);
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::int64_t lead = a.back();
        std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i)
            a[shift + i] = mod(a[shift + i] - lead * f[i], p);
        trim(a);
    }
    return a;
}

Coeffs pmul(Coeffs const & a, Coeffs const & b, Coeffs const & f, std::int64_t p)
{
    if (a.empty() || b.empty())
        return {};
    Coeffs c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<std::int64_t>(static_cast<__int128>(a[i]) * b[j] % p)) % p;
    }
    return pmod(std::move(c), f, p);
}

Coeffs ppow(Coeffs base, BigInt e, Coeffs const & f, std::int64_t p)
{
    Coeffs r{1};
    r = pmod(r, f, p);
    base = pmod(std::move(base), f, p);
    while (e > 0) {
        if ((e & 1) != 0)
            r = pmul(r, base, f, p);
        base = pmul(base, base, f, p);
        e >>= 1;
    }
    return r;
}

// gcd over F_p, made monic.
Coeffs pgcd(Coeffs a, Coeffs b, std::int64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::int64_t inv = powmod(b.back(), p - 2, p);
        Coeffs monic(b);
        for (auto & c : monic)
            c = static_cast<std::int64_t>(static_cast<__int128>(c) * inv % p);
        a = pmod(std::move(a), monic, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::int64_t inv = powmod(a.back(), p - 2, p);
        for (auto & c : a)
            c = static_cast<std::int64_t>(static_cast<__int128>(c) * inv % p);
    }
    return a;
}

bool is_irreducible(Coeffs const & f, std::int64_t p)
{
    const int r = static_cast<int>(f.size()) - 1;
    if (r == 1)
        return true;
    const Coeffs x{0, 1};
    // x^(p^k) mod f for k = 0..r by repeated p-th powers.
    std::vector<Coeffs> frob{pmod(x, f, p)};
    for (int k = 1; k <= r; ++k)
        frob.push_back(ppow(frob.back(), p, f, p));
    auto minus_x = [&](Coeffs a) {
        a.resize(std::max<std::size_t>(a.size(), 2), 0);
        a[1] = mod(a[1] - 1, p);
        trim(a);
        return a;
    };
    if (!minus_x(frob[r]).empty())
        return false;
    for (auto [ell, e] : factor_small(r)) {
        Coeffs g = pgcd(f, minus_x(frob[r / ell]), p);
        if (g.size() != 1)
            return false;
    }
    return true;
}

} // namespace

std::shared_ptr<const FieldCtx> FieldCtx::create(std::int64_t p, int r)
{
    if (!is_prime(p))
        throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (r < 1)
        throw UsageError("extension degree must be at least 1");
    std::int64_t count = checked_pow(p, r);
    for (std::int64_t n = 0; n < count; ++n) {
        Coeffs f(r + 1);
        std::int64_t t = n;
        for (int i = 0; i < r; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[r] = 1;
        if (is_irreducible(f, p))
            return std::shared_ptr<const FieldCtx>(new FieldCtx(p, std::move(f)));
    }
    throw DomainError("no irreducible polynomial found"); // unreachable
}

std::shared_ptr<const FieldCtx> FieldCtx::create(std::int64_t p, std::vector<std::int64_t> modulus)
{
    if (!is_prime(p))
        throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw UsageError("field modulus must be monic of degree >= 1");
    for (auto & c : modulus)
        c = mod(c, p);
    if (!is_irreducible(modulus, p))
        throw DomainError("field modulus is reducible over F_" + std::to_string(p));
    return std::shared_ptr<const FieldCtx>(new FieldCtx(p, std::move(modulus)));
}

FieldCtx::FieldCtx(std::int64_t p, std::vector<std::int64_t> modulus)
    : p_(p), r_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus))
{
    q_ = checked_pow(p_, r_);
    if (q_ >= (std::int64_t{1} << 31))
        throw UnsupportedError("field too large: q = " + std::to_string(q_));

    const std::int64_t order = q_ - 1;
    const auto primes = factor_small(order);
    for (std::int64_t idx = 1; idx < q_; ++idx) {
        Coeffs g = decode(idx);
        bool primitive = true;
        for (auto [ell, e] : primes) {
            Coeffs h = ppow(g, order / ell, modulus_, p_);
            if (h.size() == 1 && h[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = idx;
            break;
        }
    }
    if (q_ <= kTableLimit)
        build_tables();
}

void FieldCtx::build_tables()
{
    const std::int64_t order = q_ - 1;
    exp_.assign(order, 0);
    log_.assign(q_, static_cast<std::int32_t>(kZeroLog));
    zech_.assign(order, static_cast<std::int32_t>(kZeroLog));
    Coeffs g = decode(generator_);
    Coeffs cur{1};
    for (std::int64_t k = 0; k < order; ++k) {
        Coeffs padded(cur);
        padded.resize(r_, 0);
        std::int64_t idx = encode(padded);
        exp_[k] = static_cast<std::int32_t>(idx);
        log_[idx] = static_cast<std::int32_t>(k);
        cur = pmul(cur, g, modulus_, p_);
    }
    for (std::int64_t k = 0; k < order; ++k) {
        std::int64_t s = add_index(1, exp_[k]);
        zech_[k] = s == 0 ? static_cast<std::int32_t>(kZeroLog) : log_[s];
    }
}

std::int64_t FieldCtx::log(std::int64_t index) const
{
    return log_[index];
}

std::int64_t FieldCtx::exp(std::int64_t k) const
{
    return exp_[mod(k, q_ - 1)];
}

std::int64_t FieldCtx::zech(std::int64_t k) const
{
    return zech_[mod(k, q_ - 1)];
}

std::int64_t FieldCtx::encode(std::span<const std::int64_t> coeffs) const
{
    std::int64_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        idx = idx * p_ + coeffs[i];
    return idx;
}

std::vector<std::int64_t> FieldCtx::decode(std::int64_t index) const
{
    Coeffs c(r_);
    for (int i = 0; i < r_; ++i) {
        c[i] = index % p_;
        index /= p_;
    }
    return c;
}

std::vector<std::int64_t> FieldCtx::add(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const
{
    Coeffs c(r_);
    for (int i = 0; i < r_; ++i)
        c[i] = (a[i] + b[i]) % p_;
    return c;
}

std::vector<std::int64_t> FieldCtx::mul(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const
{
    Coeffs c = pmul(Coeffs(a.begin(), a.end()), Coeffs(b.begin(), b.end()), modulus_, p_);
    c.resize(r_, 0);
    return c;
}

std::int64_t FieldCtx::mul_index(std::int64_t a, std::int64_t b) const
{
    if (a == 0 || b == 0)
        return 0;
    if (has_tables())
        return exp_[(static_cast<std::int64_t>(log_[a]) + log_[b]) % (q_ - 1)];
    return encode(mul(decode(a), decode(b)));
}

std::int64_t FieldCtx::add_index(std::int64_t a, std::int64_t b) const
{
    if (r_ == 1)
        return (a + b) % p_;
    std::int64_t out = 0, place = 1;
    for (int i = 0; i < r_; ++i) {
        out += ((a % p_ + b % p_) % p_) * place;
        a /= p_;
        b /= p_;
        place *= p_;
    }
    return out;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr ctx, std::vector<std::int64_t> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs))
{
    if (!ctx_)
        throw UsageError("field element without a field");
    Coeffs reduced = pmod(std::move(c_), ctx_->modulus(), ctx_->p());
    for (auto & x : reduced)
        x = mod(x, ctx_->p());
    reduced.resize(ctx_->degree(), 0);
    c_ = std::move(reduced);
}

FieldElement FieldElement::zero(FieldPtr ctx)
{
    return FieldElement(std::move(ctx), {});
}

FieldElement FieldElement::one(FieldPtr ctx)
{
    return FieldElement(std::move(ctx), {1});
}

FieldElement FieldElement::from_int(FieldPtr ctx, std::int64_t n)
{
    std::int64_t p = ctx->p();
    return FieldElement(std::move(ctx), {mod(n, p)});
}

FieldElement FieldElement::from_index(FieldPtr ctx, std::int64_t index)
{
    if (index < 0 || index >= ctx->q())
        throw UsageError("field element index out of range");
    auto c = ctx->decode(index);
    return FieldElement(std::move(ctx), std::move(c));
}

bool FieldElement::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}

void FieldElement::require_same_field(FieldElement const & o) const
{
    if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_))
        throw UsageError("field elements from different fields");
}

FieldElement FieldElement::operator+(FieldElement const & o) const
{
    require_same_field(o);
    return FieldElement(ctx_, ctx_->add(c_, o.c_));
}

FieldElement FieldElement::operator-() const
{
    Coeffs c(c_);
    for (auto & x : c)
        x = mod(-x, ctx_->p());
    return FieldElement(ctx_, std::move(c));
}

FieldElement FieldElement::operator-(FieldElement const & o) const
{
    return *this + (-o);
}

FieldElement FieldElement::operator*(FieldElement const & o) const
{
    require_same_field(o);
    return FieldElement(ctx_, ctx_->mul(c_, o.c_));
}

bool FieldElement::operator==(FieldElement const & o) const
{
    require_same_field(o);
    return c_ == o.c_;
}

FieldElement FieldElement::pow(BigInt e) const
{
    if (e < 0)
        return inverse().pow(-e);
    Coeffs r = ppow(c_, e, ctx_->modulus(), ctx_->p());
    return FieldElement(ctx_, std::move(r));
}

FieldElement FieldElement::inverse() const
{
    if (is_zero())
        throw DomainError("inverse of zero in F_" + std::to_string(ctx_->q()));
    return pow(BigInt(ctx_->q() - 2));
}

FieldElement FieldElement::frobenius() const
{
    return pow(BigInt(ctx_->p()));
}

// ---------------------------------------------------------------------------

CyclotomicInteger::CyclotomicInteger(int m) : CyclotomicInteger(m, nullptr) {}

CyclotomicInteger::CyclotomicInteger(int m, std::shared_ptr<const std::vector<std::int64_t>> phi) : m_(m), phi_(std::move(phi))
{
    if (m_ < 1)
        throw DomainError("cyclotomic order must be positive");
    if (!phi_) {
        auto big = poly::cyclotomic(m_);
        auto v = std::make_shared<std::vector<std::int64_t>>();
        for (auto const & c : big)
            v->push_back(static_cast<std::int64_t>(c));
        phi_ = std::move(v);
    }
    c_.assign(phi_->size() - 1, 0);
}

CyclotomicInteger CyclotomicInteger::reduce(int m, std::shared_ptr<const std::vector<std::int64_t>> phi,
                                            std::vector<std::int64_t> full)
{
    CyclotomicInteger out(m, std::move(phi));
    const auto & f = *out.phi_;
    const std::size_t d = f.size() - 1;
    for (std::size_t i = full.size(); i-- > d;) {
        std::int64_t lead = full[i];
        if (lead == 0)
            continue;
        for (std::size_t j = 0; j <= d; ++j)
            full[i - d + j] -= lead * f[j];
    }
    for (std::size_t i = 0; i < d && i < full.size(); ++i)
        out.c_[i] = full[i];
    return out;
}

CyclotomicInteger CyclotomicInteger::integer(int m, std::int64_t n)
{
    CyclotomicInteger z(m);
    z.c_[0] = n;
    return z;
}

CyclotomicInteger CyclotomicInteger::root_of_unity(int m, std::int64_t k)
{
    CyclotomicInteger z(m);
    std::vector<std::int64_t> full(m, 0);
    full[mod(k, m)] = 1;
    return reduce(m, z.phi_, std::move(full));
}

CyclotomicInteger CyclotomicInteger::from_exponent_counts(int m, std::span<const std::int64_t> counts)
{
    if (static_cast<int>(counts.size()) != m)
        throw UsageError("exponent histogram length must equal the cyclotomic order");
    CyclotomicInteger z(m);
    return reduce(m, z.phi_, std::vector<std::int64_t>(counts.begin(), counts.end()));
}

CyclotomicInteger CyclotomicInteger::operator+(CyclotomicInteger const & o) const
{
    if (m_ != o.m_)
        throw UsageError("cyclotomic integers of different orders");
    CyclotomicInteger r(*this);
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] += o.c_[i];
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-() const
{
    CyclotomicInteger r(*this);
    for (auto & x : r.c_)
        x = -x;
    return r;
}

CyclotomicInteger CyclotomicInteger::operator-(CyclotomicInteger const & o) const
{
    return *this + (-o);
}

CyclotomicInteger CyclotomicInteger::operator*(CyclotomicInteger const & o) const
{
    if (m_ != o.m_)
        throw UsageError("cyclotomic integers of different orders");
    std::vector<std::int64_t> full(c_.size() + o.c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            full[i + j] += c_[i] * o.c_[j];
    }
    return reduce(m_, phi_, std::move(full));
}

bool CyclotomicInteger::operator==(CyclotomicInteger const & o) const
{
    return m_ == o.m_ && c_ == o.c_;
}

CyclotomicInteger CyclotomicInteger::conj() const
{
    std::vector<std::int64_t> full(m_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        full[mod(-static_cast<std::int64_t>(i), m_)] += c_[i];
    return reduce(m_, phi_, std::move(full));
}

CyclotomicInteger CyclotomicInteger::lift(int n) const
{
    if (n % m_ != 0)
        throw UsageError("cannot embed Z[zeta_" + std::to_string(m_) + "] into Z[zeta_" + std::to_string(n) + "]");
    CyclotomicInteger z(n);
    std::vector<std::int64_t> full(n, 0);
    const int step = n / m_;
    for (std::size_t i = 0; i < c_.size(); ++i)
        full[(i * step) % n] += c_[i];
    return reduce(n, z.phi_, std::move(full));
}

bool CyclotomicInteger::is_integer() const
{
    return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t CyclotomicInteger::as_integer() const
{
    if (!is_integer())
        throw DomainError("cyclotomic integer is not rational");
    return c_[0];
}

std::complex<double> CyclotomicInteger::to_complex() const
{
    const double two_pi = 6.283185307179586476925286766559;
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < c_.size(); ++i)
        acc += static_cast<double>(c_[i]) * std::polar(1.0, two_pi * static_cast<double>(i) / m_);
    return acc;
}

GaussianInteger gaussian(std::int64_t re, std::int64_t im)
{
    GaussianInteger z = GaussianInteger::integer(4, re);
    return z + GaussianInteger::integer(4, im) * GaussianInteger::root_of_unity(4, 1);
}

// ---------------------------------------------------------------------------

MultChar::MultChar(FieldPtr ctx, int m, int exponent) : ctx_(std::move(ctx)), m_(m), e_(static_cast<int>(mod(exponent, m)))
{
    if (m_ < 1 || (ctx_->q() - 1) % m_ != 0)
        throw DomainError("character order " + std::to_string(m) + " does not divide q - 1 = " +
                          std::to_string(ctx_->q() - 1));
    if (!ctx_->has_tables()) {
        // h = g^((q-1)/m) generates mu_m; chi(x) is read off x^((q-1)/m).
        const std::int64_t step = (ctx_->q() - 1) / m_;
        FieldElement h = FieldElement::from_index(ctx_, ctx_->generator_index()).pow(BigInt(step));
        FieldElement cur = FieldElement::one(ctx_);
        for (int j = 0; j < m_; ++j) {
            root_powers_.push_back(cur.index());
            cur = cur * h;
        }
    }
}

int MultChar::order() const
{
    return static_cast<int>(m_ / gcd(e_, m_));
}

std::optional<int> MultChar::value_exponent_at(std::int64_t index) const
{
    if (index == 0)
        return std::nullopt;
    std::int64_t k;
    if (ctx_->has_tables()) {
        k = ctx_->log(index) % m_;
    }
    else {
        const std::int64_t step = (ctx_->q() - 1) / m_;
        std::int64_t y = FieldElement::from_index(ctx_, index).pow(BigInt(step)).index();
        auto it = std::find(root_powers_.begin(), root_powers_.end(), y);
        k = it - root_powers_.begin();
    }
    return static_cast<int>(k * e_ % m_);
}

std::optional<int> MultChar::value_exponent(FieldElement const & x) const
{
    if (!(*x.ctx() == *ctx_))
        throw UsageError("character evaluated outside its field");
    return value_exponent_at(x.index());
}

CyclotomicInteger MultChar::value(FieldElement const & x) const
{
    auto k = value_exponent(x);
    if (!k)
        return CyclotomicInteger(m_);
    return CyclotomicInteger::root_of_unity(m_, *k);
}

MultChar MultChar::lift(int n) const
{
    if (n % m_ != 0)
        throw UsageError("character lift requires m | n");
    return MultChar(ctx_, n, e_ * (n / m_));
}

MultChar MultChar::operator*(MultChar const & o) const
{
    if (!(*ctx_ == *o.ctx_))
        throw UsageError("characters on different fields");
    int n = static_cast<int>(lcm(m_, o.m_));
    return MultChar(ctx_, n, lift(n).e_ + o.lift(n).e_);
}

int quadratic_character(FieldElement const & a)
{
    const std::int64_t q = a.ctx()->q();
    if (q % 2 == 0)
        throw UnsupportedError("quadratic character needs odd q");
    if (a.is_zero())
        return 0;
    FieldElement s = a.pow(BigInt((q - 1) / 2));
    return s == FieldElement::one(a.ctx()) ? 1 : -1;
}

CyclotomicInteger jacobi_sum(MultChar const & chi1, MultChar const & chi2)
{
    if (!(*chi1.ctx() == *chi2.ctx()))
        throw UsageError("Jacobi sum of characters on different fields");
    if (chi1.is_trivial() || chi2.is_trivial() || (chi1 * chi2).is_trivial())
        throw DomainError("Jacobi sum needs chi1, chi2 and chi1*chi2 nontrivial");
    const int n = static_cast<int>(lcm(chi1.modulus(), chi2.modulus()));
    const MultChar a = chi1.lift(n), b = chi2.lift(n);
    auto const & ctx = chi1.ctx();
    std::vector<std::int64_t> hist(n, 0);
    // x runs over F_q \ {0, 1}; 1 - x computed on encodings.
    const std::int64_t minus_one = FieldElement::from_int(ctx, -1).index();
    for (std::int64_t x = 0; x < ctx->q(); ++x) {
        if (x == 0 || x == 1)
            continue;
        std::int64_t one_minus_x = ctx->add_index(1, ctx->mul_index(minus_one, x));
        auto ka = a.value_exponent_at(x);
        auto kb = b.value_exponent_at(one_minus_x);
        hist[(*ka + *kb) % n] += 1;
    }
    return CyclotomicInteger::from_exponent_counts(n, hist);
}

} // namespace k3::ff
