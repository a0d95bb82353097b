#include "k3arith/singk3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "k3arith/error.hpp"

namespace k3::singk3 {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kPi = 3.141592653589793238462643383279502884L;

// Writes |r| = s^2 * t with t squarefree; returns {s, t}.
std::pair<std::int64_t, std::int64_t> split_square(std::int64_t r)
{
    std::int64_t s = 1, t = 1;
    for (auto [p, e] : factor_small(r < 0 ? -r : r)) {
        for (int i = 0; i < e / 2; ++i)
            s *= p;
        if (e % 2 == 1)
            t *= p;
    }
    return {s, t};
}

// Sum_{d | n} d^3
BigInt sigma3(std::size_t n)
{
    BigInt s = 0;
    for (std::size_t d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        s += BigInt(d) * d * d;
        std::size_t e = n / d;
        if (e != d)
            s += BigInt(e) * e * e;
    }
    return s;
}

std::vector<BigInt> series_mul(std::vector<BigInt> const & a, std::vector<BigInt> const & b, std::size_t n)
{
    std::vector<BigInt> c(n, 0);
    for (std::size_t i = 0; i < n && i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    return c;
}

Complex normalize_zero(Complex z)
{
    // -0.0 imaginary parts would flip arg() to -pi.
    return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

Complex principal_cbrt(Complex z)
{
    z = normalize_zero(z);
    if (z.imag() == 0.0 && z.real() >= 0.0)
        return {std::cbrt(z.real()), 0.0};
    return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

Complex principal_sqrt(Complex z)
{
    z = normalize_zero(z);
    if (z.imag() == 0.0 && z.real() >= 0.0)
        return {std::sqrt(z.real()), 0.0};
    return std::sqrt(z);
}

} // namespace

QuadraticIrrational::QuadraticIrrational(Rational x, Rational y, std::int64_t radicand) : x_(std::move(x)), y_(std::move(y))
{
    if (radicand >= 0)
        throw DomainError("imaginary quadratic irrational needs a negative radicand");
    auto [s, t] = split_square(radicand);
    y_ *= s;
    r_ = -t;
}

void QuadraticIrrational::require_same_field(QuadraticIrrational const & o) const
{
    if (r_ != o.r_)
        throw UsageError("quadratic irrationals from different fields Q(sqrt " + std::to_string(r_) + ") and Q(sqrt " +
                         std::to_string(o.r_) + ")");
}

QuadraticIrrational QuadraticIrrational::operator+(QuadraticIrrational const & o) const
{
    require_same_field(o);
    return {x_ + o.x_, y_ + o.y_, r_};
}

QuadraticIrrational QuadraticIrrational::operator-(QuadraticIrrational const & o) const
{
    require_same_field(o);
    return {x_ - o.x_, y_ - o.y_, r_};
}

QuadraticIrrational QuadraticIrrational::operator*(QuadraticIrrational const & o) const
{
    require_same_field(o);
    return {x_ * o.x_ + y_ * o.y_ * r_, x_ * o.y_ + y_ * o.x_, r_};
}

QuadraticIrrational QuadraticIrrational::operator*(Rational const & s) const
{
    return {x_ * s, y_ * s, r_};
}

Complex QuadraticIrrational::approx() const
{
    double im = static_cast<double>(y_) * std::sqrt(static_cast<double>(-r_));
    return {static_cast<double>(x_), im};
}

std::string QuadraticIrrational::to_string() const
{
    std::ostringstream os;
    os << x_ << " + " << y_ << "*sqrt(" << r_ << ")";
    return os.str();
}

PeriodPair shioda_mitani_periods(bqf::BinaryQuadraticForm const & f)
{
    if (!f.is_positive_definite())
        throw DomainError("form " + bqf::to_string(f) + " is not positive definite");
    const std::int64_t d = f.discriminant();
    Rational two_a(2 * f.a);
    QuadraticIrrational tau(Rational(-f.b) / two_a, Rational(1) / two_a, d);
    QuadraticIrrational tau_prime(Rational(f.b, 2), Rational(1, 2), d);
    return {tau, tau_prime};
}

bqf::BinaryQuadraticForm form_from_periods(PeriodPair const & periods)
{
    auto const & t = periods.tau;
    auto const & tp = periods.tau_prime;
    if (t.radicand() != tp.radicand())
        throw DomainError("periods lie in different imaginary quadratic fields");
    if (t.radical_part() <= 0 || tp.radical_part() <= 0)
        throw DomainError("periods must lie in the upper half plane");
    // tau' = b/2 + sqrt(d)/2 and sqrt(d) = 2 y' sqrt(r).
    Rational b = tp.rational_part() * 2;
    Rational a = tp.radical_part() / t.radical_part();
    Rational d = tp.radical_part() * tp.radical_part() * 4 * t.radicand();
    Rational c = (b * b - d) / (a * 4);
    if (denominator(a) != 1 || denominator(b) != 1 || denominator(c) != 1 || denominator(d) != 1)
        throw DomainError("periods do not come from an integral binary form");
    if (t.rational_part() != -b / (a * 2))
        throw DomainError("tau and tau' are not a Shioda-Mitani pair");
    return {static_cast<std::int64_t>(numerator(a)), static_cast<std::int64_t>(numerator(b)),
            static_cast<std::int64_t>(numerator(c))};
}

Eigen::Matrix<std::int64_t, 2, 2> TranscendentalLattice::gram() const
{
    Eigen::Matrix<std::int64_t, 2, 2> g;
    g << 2 * form.a, form.b, form.b, 2 * form.c;
    return g;
}

std::int64_t TranscendentalLattice::determinant() const
{
    auto g = gram();
    return g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
}

TranscendentalLattice kummer_double(TranscendentalLattice const & t)
{
    return {bqf::scale(t.form, 2), t.oriented};
}

TranscendentalLattice base_change_lattice(TranscendentalLattice const & t, int n)
{
    if (n < 1 || n > 6)
        throw UsageError("base change degree must be in 1..6, got " + std::to_string(n));
    return {bqf::scale(t.form, n), t.oriented};
}

std::vector<BigInt> j_coefficients(std::size_t count)
{
    // j q = E4^3 / prod (1 - q^n)^24, both unit power series.
    const std::size_t n = count;
    std::vector<BigInt> e4(n, 0);
    e4[0] = 1;
    for (std::size_t k = 1; k < n; ++k)
        e4[k] = 240 * sigma3(k);
    std::vector<BigInt> eta24(n, 0);
    eta24[0] = 1;
    for (std::size_t m = 1; m < n; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            for (std::size_t k = n; k-- > m;)
                eta24[k] -= eta24[k - m];
        }
    }
    std::vector<BigInt> inv(n, 0);
    inv[0] = 1;
    for (std::size_t k = 1; k < n; ++k) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= k; ++i)
            acc += eta24[i] * inv[k - i];
        inv[k] = -acc;
    }
    auto e4_cubed = series_mul(series_mul(e4, e4, n), e4, n);
    return series_mul(e4_cubed, inv, n);
}

Complex to_fundamental_domain(Complex tau)
{
    if (!(tau.imag() > 0.0))
        throw DomainError("tau must lie in the upper half plane");
    LComplex t(tau.real(), tau.imag());
    for (int iter = 0; iter < 1000; ++iter) {
        t -= std::round(t.real());
        if (std::norm(t) < 1.0L - 1e-15L)
            t = -1.0L / t;
        else
            break;
    }
    return {static_cast<double>(t.real()), static_cast<double>(t.imag())};
}

Complex j_invariant(Complex tau, double tolerance)
{
    static const std::vector<long double> coeffs = [] {
        std::vector<long double> out;
        for (auto const & c : j_coefficients(160))
            out.push_back(c.convert_to<long double>());
        return out;
    }();

    if (!(tolerance > 0.0))
        throw PrecisionError("tolerance must be positive");
    Complex t = to_fundamental_domain(tau);
    LComplex lt(t.real(), t.imag());
    const LComplex q = std::exp(LComplex(0.0L, 2.0L * kPi) * lt);
    const LComplex q_inv = 1.0L / q;

    // The tolerance is absolute up to |j| = 1 and relative beyond; j grows
    // like e^(2 pi Im tau), so an absolute bound cannot hold in general.
    const long double scale = std::max<long double>(1.0L, std::abs(q_inv));
    const long double target = tolerance * scale;

    LComplex sum = q_inv;
    long double magnitude = std::abs(q_inv);
    LComplex qn = 1.0L;
    bool converged = false;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        LComplex term = coeffs[k] * qn;
        sum += term;
        magnitude += std::abs(term);
        qn *= q;
        if (k >= 3 && std::abs(term) < target * 1e-3L) {
            converged = true;
            break;
        }
    }
    const long double rounding = std::max<long double>(64.0L * magnitude * std::numeric_limits<long double>::epsilon(),
                                                       std::abs(sum) * std::numeric_limits<double>::epsilon());
    if (!converged || rounding > target)
        throw PrecisionError("j-invariant tolerance " + std::to_string(tolerance) + " unreachable (rounding bound " +
                             std::to_string(static_cast<double>(rounding / scale)) + ")");
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

InosePencil inose_coefficients(Complex j1, Complex j2)
{
    const double c6 = 2985984.0; // 12^6
    const double c3 = 1728.0;    // 12^3
    InosePencil out;
    out.A = principal_cbrt(j1 * j2 / c6);
    out.B = principal_sqrt((1.0 - j1 / c3) * (1.0 - j2 / c3));
    out.a4 = {0.0, 0.0, 0.0, 0.0, -3.0 * out.A};
    out.a6 = {0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -2.0 * out.B, 1.0};
    return out;
}

std::int64_t ring_class_degree(std::int64_t d)
{
    return static_cast<std::int64_t>(bqf::class_number(d));
}

bool ns_field_check(std::int64_t d, std::int64_t degree_l_sqrt_d_over_q)
{
    if (degree_l_sqrt_d_over_q < 1)
        throw UsageError("field degree must be positive");
    const std::int64_t h = ring_class_degree(d);
    return degree_l_sqrt_d_over_q % (2 * h) == 0;
}

} // namespace k3::singk3
