#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "tailfit/model.hpp"

namespace tailfit {

/// log of the Euler beta function B(x, y) for x > 0, y > 0.
double log_beta(double x, double y);

/// log Z where Z = sum over n >= n_min of the family's unnormalized term;
/// the normalizing constant of the pmf is C = 1/Z.
double log_normalizer(const ModelSpec& spec);

/// log pmf(n) for n >= spec.n_min; throws DomainError off-support.
double log_pmf(const ModelSpec& spec, std::int64_t n);
double pmf(const ModelSpec& spec, std::int64_t n);

/// P(X <= n); 0 for n < n_min. One-shot evaluation; use Cdf for repeated
/// queries against the same spec.
double cdf(const ModelSpec& spec, std::int64_t n);

namespace detail {

/// Hurwitz zeta ζ(s, q) = Σ_{k>=0} (k+q)^-s, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// log of the unnormalized term of spec's family at n (no support check).
double log_unnormalized(const ModelSpec& spec, std::int64_t n);

/// log of Σ_{n >= from} n^-beta e^-gamma n (Euler-Maclaurin tail; requires
/// a from-value large enough that the correction series has converged,
/// from >= 2e4 is always safe for |beta| <= 30).
double plwc_log_tail(double beta, double gamma, double from);

}  // namespace detail

/// Cumulative evaluator for one spec with a lazily extended table over the
/// body of the support and analytic tail evaluation beyond it. All methods
/// are safe to call concurrently.
class Cdf {
public:
    explicit Cdf(ModelSpec spec);

    const ModelSpec& spec() const noexcept { return spec_; }
    double log_normalizer() const noexcept { return log_z_; }

    /// P(X <= n); 0 below support; monotone nondecreasing; -> 1 as n -> inf.
    double operator()(std::int64_t n) const;

    /// P(X > n).
    double survival(std::int64_t n) const;

    /// Smallest n with cdf(n) >= u, for u in (0, 1).
    std::int64_t quantile(double u) const;

private:
    double table_value(std::int64_t n) const;        // requires lock held
    void extend_table(std::size_t want) const;       // requires lock held
    double analytic_survival(std::int64_t n) const;  // lock-free

    ModelSpec spec_;
    double log_z_;
    mutable std::mutex mu_;
    mutable std::vector<double> cum_;  // cum_[i] = cdf(n_min + i)
    mutable double kahan_carry_ = 0.0;
    mutable bool tail_exhausted_ = false;  // cumulative sum reached 1 within rounding
};

}  // namespace tailfit
