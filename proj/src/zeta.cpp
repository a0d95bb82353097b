#include "k3arith/zeta.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "k3arith/error.hpp"

namespace k3::zeta {

namespace {

BigInt big_pow(std::int64_t q, int e)
{
    BigInt r = 1;
    for (int i = 0; i < e; ++i)
        r *= q;
    return r;
}

// Coefficient j of R(x) = sum_k c_k q^(D-k) x^(D-k); its roots are alpha/q.
poly::IntPoly scaled_reverse(poly::IntPoly const & p, std::int64_t q)
{
    const int d = poly::degree(p);
    poly::IntPoly r(static_cast<std::size_t>(d + 1));
    for (int j = 0; j <= d; ++j)
        r[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(d - j)] * big_pow(q, j);
    return r;
}

} // namespace

TraceVector traces_from_counts(std::vector<count::CountRecord> const & counts)
{
    if (counts.empty())
        throw UsageError("no counts given");
    auto sorted = counts;
    std::sort(sorted.begin(), sorted.end(), [](auto const & a, auto const & b) { return a.r < b.r; });
    TraceVector out;
    out.q = sorted.front().p;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto const & rec = sorted[i];
        if (rec.p != out.q || rec.surface != sorted.front().surface)
            throw UsageError("counts mix primes or surfaces");
        if (rec.r != static_cast<int>(i) + 1)
            throw UsageError("counts must cover r = 1.." + std::to_string(sorted.size()) + " without gaps");
        BigInt qr = big_pow(out.q, rec.r);
        BigInt t = BigInt(rec.count) - 1 - qr * qr;
        if (abs(t) > 22 * qr)
            throw DataError("count " + std::to_string(rec.count) + " over F_" + to_string(qr) +
                            " violates the Weil bound");
        out.traces.push_back(t);
    }
    return out;
}

TraceVector traces_of(FrobeniusPoly const & p, std::size_t k)
{
    return {p.q, poly::reciprocal_power_sums(p.coeffs, k)};
}

std::optional<int> functional_equation_sign(poly::IntPoly const & p, std::int64_t q)
{
    const int d = poly::degree(p);
    for (int e : {1, -1}) {
        bool ok = true;
        for (int k = 0; k <= d && ok; ++k) {
            // c_(d-k) = e q^(d-2k) c_k, written without negative powers.
            BigInt lhs = p[static_cast<std::size_t>(d - k)];
            BigInt rhs = p[static_cast<std::size_t>(k)] * e;
            if (d - 2 * k >= 0)
                rhs *= big_pow(q, d - 2 * k);
            else
                lhs *= big_pow(q, 2 * k - d);
            ok = lhs == rhs;
        }
        if (ok)
            return e;
    }
    return std::nullopt;
}

bool roots_on_circle(poly::IntPoly const & p, std::int64_t q, double tol)
{
    if (poly::degree(p) <= 0)
        return true;
    poly::RatPoly k = poly::squarefree_kernel(scaled_reverse(p, q));
    const int n = poly::degree(k);
    if (n <= 0)
        return true;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        companion(i, n - 1) = -static_cast<double>(k[static_cast<std::size_t>(i)]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw PrecisionError("eigenvalue iteration did not converge");
    for (auto const & z : solver.eigenvalues()) {
        if (std::abs(std::abs(z) - 1.0) > tol)
            return false;
    }
    return true;
}

FrobeniusPoly p2_from_traces(TraceVector const & tr, std::optional<poly::IntPoly> const & known_factor, int degree)
{
    const std::int64_t q = tr.q;
    poly::IntPoly known = known_factor.value_or(poly::IntPoly{1});
    poly::trim(known);
    if (known.empty() || known[0] != 1)
        throw UsageError("known factor must have constant term 1");
    const int f = poly::degree(known);
    if (degree < 1 || f > degree)
        throw UsageError("known factor degree " + std::to_string(f) + " exceeds " + std::to_string(degree));
    const int d = degree - f;
    const std::size_t need = static_cast<std::size_t>((d + 1) / 2);
    const std::size_t have = tr.traces.size();
    if (have < need)
        throw IncompletenessError("P_2 completion needs " + std::to_string(need) + " traces, have " +
                                      std::to_string(have),
                                  need - have);

    auto known_sums = poly::reciprocal_power_sums(known, have);
    std::vector<BigInt> sums(need);
    for (std::size_t i = 0; i < need; ++i)
        sums[i] = tr.traces[i] - known_sums[i];
    auto low = poly::coefficients_from_power_sums(sums);
    if (!low)
        throw DataError("traces are not power sums of algebraic integers");

    std::vector<poly::IntPoly> survivors;
    for (int e : {1, -1}) {
        poly::IntPoly c(static_cast<std::size_t>(d + 1), 0);
        for (std::size_t k = 0; k <= need && k <= static_cast<std::size_t>(d); ++k)
            c[k] = (*low)[k];
        bool consistent = true;
        for (int k = (d + 1) / 2; k <= d; ++k) {
            // k >= d/2: c_k = e q^(2k-d) c_(d-k), and d - k <= need is known.
            BigInt value = c[static_cast<std::size_t>(d - k)] * e * big_pow(q, 2 * k - d);
            if (static_cast<std::size_t>(k) <= need && c[static_cast<std::size_t>(k)] != value) {
                consistent = false;
                break;
            }
            c[static_cast<std::size_t>(k)] = value;
        }
        if (!consistent || !roots_on_circle(c, q))
            continue;
        poly::IntPoly full = poly::mul(known, c);
        auto sums_back = poly::reciprocal_power_sums(full, have);
        if (!std::equal(sums_back.begin(), sums_back.end(), tr.traces.begin()))
            continue;
        survivors.push_back(std::move(full));
    }
    if (survivors.empty())
        throw DataError("no functional-equation sign gives a P_2 with all roots on |alpha| = q");
    if (survivors.size() > 1)
        throw IncompletenessError("functional-equation sign is ambiguous; one more count resolves it", 1);
    return {q, survivors.front(), degree};
}

FrobeniusPoly p2_from_eigenvalues(std::vector<ff::GaussianInteger> const & eigenvalues, std::int64_t q)
{
    // prod (1 - a T) over Z[i], with BigInt parts: q^22 overflows int64 from q = 8 on
    struct Z_i {
        BigInt re, im;
    };
    std::vector<Z_i> c{{1, 0}};
    for (auto const & a : eigenvalues) {
        if (a.order() != 4 || a.coeffs().size() != 2)
            throw UsageError("eigenvalues must be Gaussian integers");
        const BigInt ar = a.coeffs()[0], ai = a.coeffs()[1];
        c.push_back({0, 0});
        for (std::size_t k = c.size() - 1; k >= 1; --k) {
            Z_i const & prev = c[k - 1];
            c[k].re -= ar * prev.re - ai * prev.im;
            c[k].im -= ar * prev.im + ai * prev.re;
        }
    }
    poly::IntPoly out;
    for (auto const & x : c) {
        if (x.im != 0)
            throw VerificationError("eigenvalues are not closed under complex conjugation");
        out.push_back(x.re);
    }
    return {q, out, static_cast<int>(eigenvalues.size())};
}

PicardBound picard_upper_bound(FrobeniusPoly const & p)
{
    PicardBound out;
    const int d = poly::degree(p.coeffs);
    if (d > p.degree)
        throw UsageError("polynomial degree exceeds the declared degree");
    poly::IntPoly r = scaled_reverse(p.coeffs, p.q);
    for (int m = 1; m <= 1000; ++m) {
        const int phi = static_cast<int>(euler_phi(m));
        if (phi > kB2 || phi > poly::degree(r))
            continue;
        const poly::IntPoly cyc = poly::cyclotomic(m);
        int mult = 0;
        while (poly::degree(r) >= phi) {
            auto quo = poly::exact_divide(r, cyc);
            if (!quo)
                break;
            r = std::move(*quo);
            ++mult;
        }
        if (mult > 0) {
            out.factors.push_back({m, mult});
            out.known_part += mult * phi;
        }
    }
    out.slack = p.degree - d;
    out.bound = out.known_part + out.slack;
    if (out.slack == 0) {
        out.parity_ok = out.known_part % 2 == p.degree % 2;
        out.note = out.parity_ok ? "complete: bound has the parity of the degree"
                                 : "complete but the unit-root count has the wrong parity";
    }
    else {
        out.note = "partial: " + std::to_string(out.slack) + " unknown eigenvalues counted as slack";
    }
    return out;
}

ArtinTate artin_tate_discriminant(FrobeniusPoly const & p, int rho)
{
    if (rho < 0)
        throw UsageError("rho must be non-negative");
    poly::IntPoly line{1, BigInt(-p.q)};
    auto quo = poly::exact_divide(p.coeffs, poly::pow(line, static_cast<unsigned>(rho)));
    if (!quo)
        throw MultiplicityError("(1 - " + std::to_string(p.q) + "T)^" + std::to_string(rho) + " does not divide P_2");
    Rational value = Rational(p.q) * poly::evaluate(*quo, Rational(1, p.q));
    if (value == 0)
        throw MultiplicityError("eigenvalue q has multiplicity above rho = " + std::to_string(rho));
    return {value, squarefree_class(value)};
}

Combined van_luijk_combine(int b1, BigInt const & c1, int b2, BigInt const & c2)
{
    const int lo = std::min(b1, b2);
    if (b1 != b2 || c1 == c2)
        return {lo, false};
    // Equal bounds, different discriminant classes: NS(X) cannot have finite
    // index in both reductions.
    if (b1 == 2)
        return {1, false};
    return {lo, true};
}

} // namespace k3::zeta
