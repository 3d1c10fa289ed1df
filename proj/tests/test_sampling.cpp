#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "tailfit/rng.hpp"
#include "tailfit/sampling.hpp"

using namespace tailfit;

TEST_CASE("rng streams are reproducible and distinct") {
    SeededRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c |= va != c.next_u64();
        differs_d |= va != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("next_unit stays inside the open unit interval") {
    SeededRng rng(1, 0);
    for (int i = 0; i < 100000; ++i) {
        double u = rng.next_unit();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sampling is deterministic in (spec, seed, stream, count)") {
    ModelSpec spec = ModelSpec::power_law_cutoff(2.3, 0.06);
    SeededRng r1(99, 5), r2(99, 5);
    CountSample s1 = sample(spec, r1, 5000);
    CountSample s2 = sample(spec, r2, 5000);
    CHECK(s1.counts == s2.counts);

    SeededRng r3(99, 6);
    CountSample s3 = sample(spec, r3, 5000);
    CHECK(s1.counts != s3.counts);
}

TEST_CASE("samples respect the support lower bound") {
    for (std::int64_t n_min : {1, 3, 10}) {
        ModelSpec spec = ModelSpec::power_law(2.1, n_min);
        SeededRng rng(7, 0);
        CountSample s = sample(spec, rng, 20000);
        CHECK(s.min_value() >= n_min);
        CHECK(s.size() == 20000);
    }
}

TEST_CASE("an extreme cutoff collapses to a point mass at n_min") {
    ModelSpec spec = ModelSpec::power_law_cutoff(2.0, 50.0);
    SeededRng rng(1234, 0);
    CountSample s = sample(spec, rng, 1000);
    CHECK(s.counts.size() == 1);
    CHECK(s.min_value() == 1);
    CHECK(s.multiplicity(1) == 1000);
}

TEST_CASE("yule-simon sample mean approaches (rho-1)/(rho-2)") {
    ModelSpec spec = ModelSpec::yule_simon(3.0);
    SeededRng rng(2024, 0);
    const std::int64_t n = 1'000'000;
    CountSample s = sample(spec, rng, n);
    double mean = 0.0;
    for (const auto& [value, mult] : s.counts)
        mean += static_cast<double>(value) * static_cast<double>(mult);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& [value, mult] : s.counts) {
        double d = static_cast<double>(value) - mean;
        var += d * d * static_cast<double>(mult);
    }
    var /= static_cast<double>(n - 1);
    double se = std::sqrt(var / static_cast<double>(n));
    CHECK(std::abs(mean - 2.0) <= 3.0 * se);
}

TEST_CASE("power-law ground-state frequency matches 1/zeta") {
    ModelSpec spec = ModelSpec::power_law(2.5);
    SeededRng rng(555, 0);
    const std::int64_t n = 1'000'000;
    CountSample s = sample(spec, rng, n);
    double p = 1.0 / 1.3414872572509171;  // 1 / zeta(2.5)
    double freq = static_cast<double>(s.multiplicity(1)) / static_cast<double>(n);
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(freq - p) <= 3.0 * se);
}

namespace {

// Chi-squared test of a sample against the exact pmf, pooling consecutive
// values until each bin's expected count reaches 5; the far tail forms the
// final bin via the survival function.
double chi2_pvalue(const CountSample& s, const ModelSpec& spec) {
    Cdf model(spec);
    const double log_z = model.log_normalizer();
    const double n = static_cast<double>(s.size());
    std::vector<double> expected, observed;
    double exp_acc = 0.0, obs_acc = 0.0;
    std::int64_t last = s.max_value();
    for (std::int64_t v = spec.n_min; v <= last; ++v) {
        exp_acc += n * std::exp(detail::log_unnormalized(spec, v) - log_z);
        obs_acc += static_cast<double>(s.multiplicity(v));
        if (exp_acc >= 5.0) {
            expected.push_back(exp_acc);
            observed.push_back(obs_acc);
            exp_acc = obs_acc = 0.0;
        }
    }
    // everything beyond the last closed bin
    expected.push_back(exp_acc + n * model.survival(last));
    observed.push_back(obs_acc);
    if (expected.back() < 5.0 && expected.size() > 1) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }
    REQUIRE(expected.size() >= 2);
    double stat = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    return oracle::chi2_sf(stat, static_cast<double>(expected.size() - 1));
}

}  // namespace

TEST_CASE("chi-squared agreement between draws and exact pmf") {
    const ModelSpec specs[] = {
        ModelSpec::power_law(2.5),
        ModelSpec::power_law_cutoff(2.3, 0.06),
        ModelSpec::yule_simon(3.0),
        ModelSpec::exponential(0.7),
    };
    std::uint64_t stream = 0;
    for (const ModelSpec& spec : specs) {
        CAPTURE(family_name(spec.family));
        SeededRng rng(31337, stream++);
        CountSample s = sample(spec, rng, 100000);
        CHECK(chi2_pvalue(s, spec) > 0.001);
    }
}

TEST_CASE("sample rejects a non-positive count") {
    ModelSpec spec = ModelSpec::exponential(1.0);
    SeededRng rng(1, 0);
    CHECK_THROWS(sample(spec, rng, 0));
}
