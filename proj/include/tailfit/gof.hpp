#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tailfit/dataset.hpp"
#include "tailfit/distributions.hpp"
#include "tailfit/fitting.hpp"

namespace tailfit {

/// Maximum absolute difference between the empirical CDF of the sample and
/// the model CDF, evaluated at every distinct data value and at the value
/// preceding it (on a discrete support |S - P| over a gap is maximized at
/// its endpoints). Throws DomainError on an empty sample.
double ks_distance(const CountSample& data, const Cdf& model);
double ks_distance(const CountSample& data, const ModelSpec& spec);

struct GofResult {
    double observed_ks = 0.0;
    std::vector<double> replicate_ks;  // index i-1 holds replicate i (stream id i)
    double p_value = 0.0;              // |{i : replicate_ks[i] > observed_ks}| / R
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
    FitResult fitted;                  // fit on the original data
    std::vector<std::int64_t> failed_replicates;  // 1-based ids whose refit failed twice
};

struct GofOptions {
    std::int64_t replicates = 5000;
    std::uint64_t seed = 0;
    int threads = 1;
    // Called with (completed, total) as replicates finish; may be invoked
    // from worker threads.
    std::function<void(std::int64_t, std::int64_t)> progress;
};

/// Parametric-bootstrap goodness-of-fit test. Fits the family to the data,
/// then for each replicate i draws a synthetic sample of the same size from
/// the fitted spec (stream id i), refits the family to the synthetic sample,
/// and measures its KS distance against its own refitted spec. The p-value
/// is the exact fraction of replicates whose distance strictly exceeds the
/// observed one. A refit that fails to converge is retried once on stream
/// R + i; a second failure marks the replicate (its distance is recorded as
/// 0). More than 1% marked replicates aborts with NumericError.
///
/// Identical (data, family, n_min, replicates, seed) produce an identical
/// GofResult regardless of thread count.
GofResult gof_test(Family family, const CountSample& data, std::int64_t n_min,
                   const GofOptions& opts);

}  // namespace tailfit
