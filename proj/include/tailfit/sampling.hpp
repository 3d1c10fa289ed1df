#pragma once

#include <cstdint>
#include <string>

#include "tailfit/dataset.hpp"
#include "tailfit/distributions.hpp"
#include "tailfit/rng.hpp"

namespace tailfit {

/// count independent inverse-CDF draws from spec: for each uniform u in
/// (0,1) the draw is the smallest n with cdf(n) >= u. Every returned value
/// is >= spec.n_min.
CountSample sample(const ModelSpec& spec, SeededRng& rng, std::int64_t count,
                   std::string label = "synthetic");

/// Same draws against an existing evaluator (lets callers share the
/// cumulative table across many sampling calls).
CountSample sample(const Cdf& model, SeededRng& rng, std::int64_t count,
                   std::string label = "synthetic");

}  // namespace tailfit
