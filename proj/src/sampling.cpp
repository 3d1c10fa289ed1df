#include "tailfit/sampling.hpp"

#include "tailfit/errors.hpp"

namespace tailfit {

CountSample sample(const Cdf& model, SeededRng& rng, std::int64_t count, std::string label) {
    if (count < 1) throw DomainError("sampling", "count must be >= 1");
    CountSample out;
    out.label = std::move(label);
    for (std::int64_t i = 0; i < count; ++i)
        out.counts[model.quantile(rng.next_unit())] += 1;
    return out;
}

CountSample sample(const ModelSpec& spec, SeededRng& rng, std::int64_t count, std::string label) {
    Cdf model(spec);
    return sample(model, rng, count, std::move(label));
}

}  // namespace tailfit
