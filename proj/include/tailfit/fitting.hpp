#pragma once

#include <cstdint>
#include <vector>

#include "tailfit/dataset.hpp"
#include "tailfit/model.hpp"

namespace tailfit {

struct FitResult {
    ModelSpec spec;
    double log_likelihood = 0.0;
    long iterations = 0;      // objective evaluations across all stages
    bool converged = false;
    // Stage diagnostics: scalar fits store {final bracket width};
    // the two-parameter fit stores {beta spread, gamma spread} of the
    // final simplex of the winning restart.
    std::vector<double> diagnostics;
};

/// Sum of log pmf over the sample, one log-pmf evaluation per distinct
/// value. Throws DomainError if any value lies below spec.n_min.
double loglik(const ModelSpec& spec, const CountSample& data);

/// Maximum-likelihood fit of one family on {n_min, n_min+1, ...}.
/// One-parameter families use golden-section search on a fixed bracket;
/// the power law with cutoff uses a coarse log-spaced grid scan followed
/// by Nelder-Mead refinement restarted from the top three grid cells.
/// Parameter tolerance 1e-6. Flat profiles tie-break to the smallest
/// parameter value attaining the maximum.
FitResult fit(Family family, const CountSample& data, std::int64_t n_min);

namespace search_box {
// Bounds of the likelihood search, wide enough to cover heavy-tail
// exponents seen in practice with ample margin.
inline constexpr double kAlphaLo = 1.001, kAlphaHi = 10.0;
inline constexpr double kBetaLo = 0.5, kBetaHi = 10.0;
inline constexpr double kBetaGridLo = 1.001;     // grid cells with gamma <= kBetaRelaxGamma
inline constexpr double kBetaRelaxGamma = 0.01;  // below this, beta grid starts at kBetaGridLo
inline constexpr double kGammaGridLo = 1e-6, kGammaHi = 10.0;
inline constexpr double kGammaRefineLo = 1e-12;  // simplex stage may approach the pure power law
inline constexpr double kRhoLo = 1.001, kRhoHi = 20.0;
inline constexpr double kLambdaLo = 1e-6, kLambdaHi = 10.0;
inline constexpr double kParamTol = 1e-6;
}  // namespace search_box

}  // namespace tailfit
