#include "tailfit/gof.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "tailfit/errors.hpp"
#include "tailfit/rng.hpp"
#include "tailfit/sampling.hpp"

namespace tailfit {

double ks_distance(const CountSample& data, const Cdf& model) {
    if (data.counts.empty()) throw DomainError("gof", "empty sample");
    if (data.min_value() < model.spec().n_min)
        throw DomainError("gof", "data contains values below the support lower bound");
    const double total = static_cast<double>(data.size());
    double d = 0.0;
    std::int64_t running = 0;
    for (const auto& [value, mult] : data.counts) {
        // |S - P| over the gap below each step is maximized at its
        // endpoints: check the step's top and the preceding integer.
        d = std::max(d, std::abs(static_cast<double>(running) / total - model(value - 1)));
        running += mult;
        d = std::max(d, std::abs(static_cast<double>(running) / total - model(value)));
    }
    return d;
}

double ks_distance(const CountSample& data, const ModelSpec& spec) {
    Cdf model(spec);
    return ks_distance(data, model);
}

GofResult gof_test(Family family, const CountSample& data, std::int64_t n_min,
                   const GofOptions& opts) {
    if (opts.replicates < 1) throw DomainError("gof", "replicate count must be >= 1");
    if (data.counts.empty()) throw DomainError("gof", "empty sample");

    GofResult result;
    result.replicates = opts.replicates;
    result.seed = opts.seed;
    result.fitted = fit(family, data, n_min);

    Cdf fitted_cdf(result.fitted.spec);
    result.observed_ks = ks_distance(data, fitted_cdf);

    const std::int64_t sample_size = data.size();
    const std::int64_t r_total = opts.replicates;
    result.replicate_ks.assign(static_cast<std::size_t>(r_total), 0.0);
    std::vector<char> failed(static_cast<std::size_t>(r_total), 0);

    std::atomic<std::int64_t> next{1};
    std::atomic<std::int64_t> done{0};

    auto worker = [&] {
        // Each worker keeps its own evaluator for the fitted spec so the
        // shared cumulative table is never a point of contention.
        Cdf local_fitted(result.fitted.spec);
        for (;;) {
            std::int64_t i = next.fetch_add(1);
            if (i > r_total) break;
            bool ok = false;
            double ks = 0.0;
            for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
                std::uint64_t stream =
                    static_cast<std::uint64_t>(attempt == 0 ? i : r_total + i);
                SeededRng rng(opts.seed, stream);
                try {
                    CountSample synth = sample(local_fitted, rng, sample_size);
                    FitResult refit = fit(family, synth, n_min);
                    if (!refit.converged) continue;
                    ks = ks_distance(synth, refit.spec);
                    ok = true;
                } catch (const Error&) {
                    // degenerate synthetic draw; retry on the fresh stream
                }
            }
            std::size_t idx = static_cast<std::size_t>(i - 1);
            result.replicate_ks[idx] = ok ? ks : 0.0;
            failed[idx] = ok ? 0 : 1;
            std::int64_t completed = done.fetch_add(1) + 1;
            if (opts.progress) opts.progress(completed, r_total);
        }
    };

    int n_threads = std::max(1, opts.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::int64_t n_failed = 0;
    std::int64_t exceed = 0;
    for (std::size_t i = 0; i < result.replicate_ks.size(); ++i) {
        if (failed[i]) {
            ++n_failed;
            result.failed_replicates.push_back(static_cast<std::int64_t>(i + 1));
        } else if (result.replicate_ks[i] > result.observed_ks) {
            ++exceed;
        }
    }
    if (static_cast<double>(n_failed) > 0.01 * static_cast<double>(r_total))
        throw NumericError("gof", std::to_string(n_failed) + " of " + std::to_string(r_total) +
                                      " replicate refits failed");
    result.p_value = static_cast<double>(exceed) / static_cast<double>(r_total);
    return result;
}

}  // namespace tailfit
