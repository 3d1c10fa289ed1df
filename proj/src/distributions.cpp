#include "tailfit/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "tailfit/errors.hpp"

namespace tailfit {

namespace {

// B_{2j} / (2j)! for j = 1..15, the Euler-Maclaurin correction weights.
constexpr std::array<double, 15> kEmWeight = {
    8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,
    -8.26719576719576754e-07, 2.08767569878681002e-08,  -5.28419013868749322e-10,
    1.33825365306846789e-11,  -3.38968029632258272e-13, 8.58606205627784517e-15,
    -2.17486869855806192e-16, 5.50900282836023030e-18,  -1.39544646858125247e-19,
    3.53470703962946728e-21,  -8.95351742703754628e-23, 2.26795245233768293e-24,
};

// 20-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<std::array<double, 2>, 20> kGauss20 = {{
    {-9.93128599185094885e-01, 1.76140071391532732e-02},
    {-9.63971927277913809e-01, 4.06014298003862170e-02},
    {-9.12234428251325835e-01, 6.26720483341094425e-02},
    {-8.39116971822218782e-01, 8.32767415767046715e-02},
    {-7.46331906460150796e-01, 1.01930119817240261e-01},
    {-6.36053680726515025e-01, 1.18194531961518245e-01},
    {-5.10867001950827126e-01, 1.31688638449176526e-01},
    {-3.73706088715419549e-01, 1.42096109318381875e-01},
    {-2.27785851141645096e-01, 1.49172986472603658e-01},
    {-7.65265211334973383e-02, 1.52753387130725782e-01},
    {+7.65265211334973383e-02, 1.52753387130725782e-01},
    {+2.27785851141645096e-01, 1.49172986472603658e-01},
    {+3.73706088715419549e-01, 1.42096109318381875e-01},
    {+5.10867001950827126e-01, 1.31688638449176526e-01},
    {+6.36053680726515025e-01, 1.18194531961518245e-01},
    {+7.46331906460150796e-01, 1.01930119817240261e-01},
    {+8.39116971822218782e-01, 8.32767415767046715e-02},
    {+9.12234428251325835e-01, 6.26720483341094425e-02},
    {+9.63971927277913809e-01, 4.06014298003862170e-02},
    {+9.93128599185094885e-01, 1.76140071391532732e-02},
}};

struct KahanSum {
    double total = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = total + y;
        carry = (t - total) - y;
        total = t;
    }
};

double logsumexp2(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// Terms summed directly before handing the remainder to the
// Euler-Maclaurin tail machinery.
constexpr std::int64_t kPlwcDirectTerms = 20000;

// Upper bound on the remainder Σ_{m>n} m^-beta e^-gamma m, scaled so the
// current term is t. Takes the tightest of a geometric-ratio bound and,
// for beta > 1, an integral bound that survives vanishing gamma.
double plwc_tail_bound(double beta, double gamma, double n, double t) {
    double bound = std::numeric_limits<double>::infinity();
    double r = (beta >= 0.0) ? std::exp(-gamma)
                             : std::exp(-beta * std::log1p(1.0 / n) - gamma);
    if (r < 1.0) bound = t * r / (1.0 - r);
    if (beta > 1.0) bound = std::min(bound, t * n / (beta - 1.0));
    return bound;
}

// log of Σ_{n >= from} n^-beta e^-gamma n with certified accuracy: direct
// summation while a rigorous tail bound can stop it, else Euler-Maclaurin
// with the tail integral evaluated by panelwise Gauss-Legendre in
// log-abscissa space.
double plwc_log_sum(double beta, double gamma, double from) {
    const double l0 = -(beta * std::log(from) + gamma * from);
    KahanSum sum;
    sum.add(1.0);
    const double cap = from + static_cast<double>(kPlwcDirectTerms);
    for (double n = from + 1.0; n <= cap; n += 1.0) {
        double t = std::exp(-(beta * std::log(n) + gamma * n) - l0);
        sum.add(t);
        if (plwc_tail_bound(beta, gamma, n, t) <= 1e-13 * sum.total)
            return l0 + std::log(sum.total);
    }
    double log_tail = detail::plwc_log_tail(beta, gamma, cap + 1.0);
    double result = logsumexp2(l0 + std::log(sum.total), log_tail);
    if (!std::isfinite(result))
        throw NumericError("distributions",
                           "power-law-cutoff series failed (beta=" + std::to_string(beta) +
                               ", gamma=" + std::to_string(gamma) + ")");
    return result;
}

// log of Σ_{n >= from} of the family's unnormalized term. The normalizer
// is this sum at from = n_min; the survival function is the same sum from
// n+1, divided by the normalizer.
double log_tail_sum(const ModelSpec& spec, double from) {
    switch (spec.family) {
        case Family::PowerLaw:
            return std::log(detail::hurwitz_zeta(spec.alpha(), from));
        case Family::PowerLawCutoff:
            return plwc_log_sum(spec.beta(), spec.gamma(), from);
        case Family::YuleSimon:
            // Σ_{n>=N} B(n, rho) = B(N, rho-1): expand B via its integral,
            // sum the geometric series in t under the integral sign.
            return std::log(spec.rho() - 1.0) + log_beta(from, spec.rho() - 1.0);
        case Family::Exponential:
            return -spec.lambda() * from - std::log(-std::expm1(-spec.lambda()));
    }
    throw DomainError("distributions", "unknown family");
}

}  // namespace

double log_beta(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError("distributions", "log_beta requires positive arguments");
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

namespace detail {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0))
        throw DomainError("distributions", "hurwitz_zeta requires s > 1, q > 0");
    constexpr int kPrefix = 16;
    KahanSum sum;
    for (int k = 0; k < kPrefix; ++k) sum.add(std::pow(k + q, -s));
    const double nq = kPrefix + q;
    const double pmax = std::pow(nq, -s);
    sum.add(pmax * (nq / (s - 1.0) + 0.5));
    double scp = s;
    double pcp = pmax / nq;
    for (std::size_t j = 0; j < kEmWeight.size(); ++j) {
        double delta = kEmWeight[j] * scp * pcp;
        sum.add(delta);
        if (std::abs(delta) < 0.5 * std::numeric_limits<double>::epsilon() * sum.total) break;
        scp *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        pcp /= nq * nq;
    }
    return sum.total;
}

double plwc_log_tail(double beta, double gamma, double from) {
    const double c = gamma * from;
    const double l0 = -(beta * std::log(from) + gamma * from);

    // Tail integral: substituting x = from * e^v turns
    // ∫_from^∞ x^-beta e^-gamma x dx into from * ∫_0^∞ exp(phi(v)) dv with
    // phi(v) = (1 - beta) v - c (e^v - 1), scaled so phi(0) = 0.
    auto phi = [&](double v) { return (1.0 - beta) * v - c * std::expm1(v); };

    double v_max = std::log1p(140.0 / c);
    for (int i = 0; i < 4; ++i)
        v_max = std::log1p((140.0 + std::max(0.0, 1.0 - beta) * v_max) / c);
    v_max += 0.25;

    // First pass: locate the largest exponent so the integral can be
    // accumulated without overflow for steeply growing unnormalized terms.
    double phi_max = 0.0;
    {
        const int kScan = 64;
        for (int i = 0; i <= kScan; ++i)
            phi_max = std::max(phi_max, phi(v_max * i / kScan));
    }

    KahanSum integral;  // of exp(phi - phi_max)
    double v = 0.0;
    int panels = 0;
    while (v < v_max) {
        double slope = std::abs(1.0 - beta) + c * std::exp(std::min(v + 0.5, v_max));
        double w = std::min({0.5, 6.0 / (1.0 + slope), v_max - v});
        double mid = v + 0.5 * w;
        double half = 0.5 * w;
        for (const auto& [node, weight] : kGauss20)
            integral.add(weight * half * std::exp(phi(mid + half * node) - phi_max));
        v += w;
        if (++panels > 4000)
            throw NumericError("distributions",
                               "power-law-cutoff tail quadrature failed (beta=" +
                                   std::to_string(beta) + ", gamma=" + std::to_string(gamma) + ")");
    }
    double tail = from * std::exp(phi_max) * integral.total;

    // Euler-Maclaurin boundary corrections; derivative ratios
    // f^(m)(a) / f(a) for f = x^-beta e^-gamma x.
    auto deriv_ratio = [&](int m) {
        double total = 0.0;
        double binom = 1.0;
        double poch = 1.0;  // (beta)_j
        double apow = 1.0;  // from^-j
        for (int j = 0; j <= m; ++j) {
            total += binom * poch * apow * std::pow(gamma, m - j);
            binom *= static_cast<double>(m - j) / (j + 1.0);
            poch *= beta + j;
            apow /= from;
        }
        return (m % 2 == 0) ? total : -total;
    };
    double corr = 0.5;
    for (int j = 1; j <= 4; ++j) corr -= kEmWeight[j - 1] * deriv_ratio(2 * j - 1);

    double result = l0 + std::log(tail + corr);
    if (!std::isfinite(result))
        throw NumericError("distributions",
                           "power-law-cutoff tail evaluation failed (beta=" +
                               std::to_string(beta) + ", gamma=" + std::to_string(gamma) + ")");
    return result;
}

double log_unnormalized(const ModelSpec& spec, std::int64_t n) {
    const double x = static_cast<double>(n);
    switch (spec.family) {
        case Family::PowerLaw:
            return -spec.alpha() * std::log(x);
        case Family::PowerLawCutoff:
            return -spec.beta() * std::log(x) - spec.gamma() * x;
        case Family::YuleSimon:
            return std::log(spec.rho() - 1.0) + log_beta(x, spec.rho());
        case Family::Exponential:
            return -spec.lambda() * x;
    }
    throw DomainError("distributions", "unknown family");
}

}  // namespace detail

double log_normalizer(const ModelSpec& spec) {
    spec.validate();
    return log_tail_sum(spec, static_cast<double>(spec.n_min));
}

double log_pmf(const ModelSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < spec.n_min)
        throw DomainError("distributions", "pmf queried below the support lower bound");
    return detail::log_unnormalized(spec, n) - log_tail_sum(spec, static_cast<double>(spec.n_min));
}

double pmf(const ModelSpec& spec, std::int64_t n) { return std::exp(log_pmf(spec, n)); }

double cdf(const ModelSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < spec.n_min) return 0.0;
    double log_z = log_tail_sum(spec, static_cast<double>(spec.n_min));
    double surv = std::exp(log_tail_sum(spec, static_cast<double>(n) + 1.0) - log_z);
    return std::min(1.0, std::max(0.0, 1.0 - surv));
}

// ---------------------------------------------------------------------------
// Cdf

namespace {
constexpr std::size_t kTableCap = 1u << 16;
constexpr std::int64_t kMaxSupport = std::int64_t{1} << 62;
}  // namespace

Cdf::Cdf(ModelSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    log_z_ = log_tail_sum(spec_, static_cast<double>(spec_.n_min));
}

void Cdf::extend_table(std::size_t want) const {
    std::size_t target = std::max<std::size_t>(1024, cum_.size());
    while (target <= want) target *= 2;
    target = std::min(target, kTableCap);
    double total = cum_.empty() ? 0.0 : cum_.back();
    while (cum_.size() < target && !tail_exhausted_) {
        std::int64_t n = spec_.n_min + static_cast<std::int64_t>(cum_.size());
        double p = std::exp(detail::log_unnormalized(spec_, n) - log_z_);
        double y = p - kahan_carry_;
        double t = total + y;
        kahan_carry_ = (t - total) - y;
        total = t;
        cum_.push_back(std::min(total, 1.0));
        if (1.0 - total <= 1e-15) tail_exhausted_ = true;
    }
}

double Cdf::analytic_survival(std::int64_t n) const {
    return std::exp(log_tail_sum(spec_, static_cast<double>(n) + 1.0) - log_z_);
}

double Cdf::operator()(std::int64_t n) const {
    if (n < spec_.n_min) return 0.0;
    std::uint64_t idx = static_cast<std::uint64_t>(n - spec_.n_min);
    if (idx < kTableCap) {
        std::lock_guard lock(mu_);
        if (idx >= cum_.size()) extend_table(idx);
        if (idx < cum_.size()) return cum_[idx];
        return 1.0;  // table stopped early: remaining mass below rounding
    }
    return std::min(1.0, std::max(0.0, 1.0 - analytic_survival(n)));
}

double Cdf::survival(std::int64_t n) const {
    if (n < spec_.n_min) return 1.0;
    std::uint64_t idx = static_cast<std::uint64_t>(n - spec_.n_min);
    if (idx < kTableCap) return 1.0 - (*this)(n);
    return std::min(1.0, std::max(0.0, analytic_survival(n)));
}

std::int64_t Cdf::quantile(double u) const {
    if (!(u > 0.0) || !(u < 1.0))
        throw DomainError("distributions", "quantile requires u in (0, 1)");
    {
        std::lock_guard lock(mu_);
        while ((cum_.empty() || cum_.back() < u) && !tail_exhausted_ && cum_.size() < kTableCap)
            extend_table(cum_.size());
        if (!cum_.empty() && cum_.back() >= u) {
            auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
            return spec_.n_min + static_cast<std::int64_t>(it - cum_.begin());
        }
        if (tail_exhausted_)  // u falls in mass below rounding; return the last tabulated value
            return spec_.n_min + static_cast<std::int64_t>(cum_.size()) - 1;
    }
    // Far tail: bracket by doubling on the analytic cdf, then bisect for
    // the smallest n with cdf(n) >= u.
    std::int64_t lo = spec_.n_min + static_cast<std::int64_t>(kTableCap) - 1;
    std::int64_t span = kTableCap;
    std::int64_t hi = lo;
    while (1.0 - analytic_survival(hi) < u) {
        lo = hi;
        if (hi > kMaxSupport / 2)
            throw NumericError("distributions", "quantile beyond representable support");
        hi = lo + span;
        span *= 2;
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (1.0 - analytic_survival(mid) >= u)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace tailfit
