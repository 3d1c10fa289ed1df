#include "tailfit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailfit/distributions.hpp"
#include "tailfit/errors.hpp"

namespace tailfit {

double n_max(std::int64_t n_authors, const ModelSpec& spec) {
    spec.validate();
    if (spec.family != Family::PowerLaw)
        throw DomainError("analysis", "the maximal-count bound is defined for power-law specs");
    if (n_authors < 1) throw DomainError("analysis", "author count must be >= 1");
    // (N * C)^(1/alpha) with C = 1/Z, so truncated supports flow through.
    double log_c = -log_normalizer(spec);
    return std::exp((std::log(static_cast<double>(n_authors)) + log_c) / spec.alpha());
}

KeyPlayerReport key_players(const CountSample& data, const FitResult& power_law_fit) {
    if (data.counts.empty()) throw DomainError("analysis", "empty sample");
    KeyPlayerReport report;
    report.n_authors = data.size();
    report.fitted_alpha = power_law_fit.spec.alpha();  // throws unless power-law
    report.n_max = n_max(report.n_authors, power_law_fit.spec);
    for (const auto& [value, mult] : data.counts)
        if (static_cast<double>(value) > report.n_max) report.exceeders.emplace_back(value, mult);
    return report;
}

std::int64_t Histogram2D::total() const {
    std::int64_t t = 0;
    for (const auto& [cell, count] : bins) t += count;
    return t;
}

Histogram2D joint_histogram(const AuthorCounts& a, const AuthorCounts& b) {
    Histogram2D h;
    for (const auto& [author, count_a] : a) {
        auto it = b.find(author);
        if (it != b.end()) ++h.bins[{count_a, it->second}];
    }
    return h;
}

std::vector<Peak> detect_peaks(const Histogram& h, std::int64_t window, double min_prominence) {
    if (window < 1) throw DomainError("analysis", "window must be >= 1");
    if (!(min_prominence > 0.0)) throw DomainError("analysis", "prominence must be positive");
    std::vector<Peak> peaks;
    for (auto it = h.bins.begin(); it != h.bins.end(); ++it) {
        const std::int64_t v = it->first;
        const double height = it->second;
        auto lo = h.bins.lower_bound(v - window);
        auto hi = h.bins.upper_bound(v + window);
        bool strict_max = true;
        bool has_left = false, has_right = false;
        std::vector<double> heights;
        for (auto w = lo; w != hi; ++w) {
            heights.push_back(w->second);
            if (w == it) continue;
            if (w->first < v) has_left = true;
            if (w->first > v) has_right = true;
            if (w->second >= height) strict_max = false;
        }
        if (!strict_max || !has_left || !has_right) continue;
        auto mid = heights.begin() + static_cast<std::ptrdiff_t>(heights.size() / 2);
        std::nth_element(heights.begin(), mid, heights.end());
        double median = *mid;
        if (heights.size() % 2 == 0) {
            double below = *std::max_element(heights.begin(), mid);
            median = (median + below) / 2.0;
        }
        if (height > min_prominence * median) peaks.push_back({v, height});
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.height != b.height) return a.height > b.height;
        return a.value < b.value;
    });
    return peaks;
}

RateAnalysis pref_attach_rates(const EventLog& log, YearRange years, bool include_inactive) {
    if (years.first > years.last) throw DomainError("analysis", "empty year range");
    if (log.events.empty()) throw DomainError("analysis", "empty event log");

    // Per author: publication count per year, in year order.
    std::map<std::string, std::map<int, std::int64_t>> by_author;
    for (const Event& e : log.events) ++by_author[e.author][e.year];

    // (year, k) -> {N_k, m_k}
    std::map<std::pair<int, std::int64_t>, std::pair<std::int64_t, std::int64_t>> agg;
    for (const auto& [author, year_counts] : by_author) {
        std::int64_t before_range = 0;
        for (const auto& [year, c] : year_counts)
            if (year < years.first) before_range += c;
        std::int64_t k = before_range;
        for (int t = years.first; t <= years.last; ++t) {
            auto it = year_counts.find(t);
            std::int64_t published = it == year_counts.end() ? 0 : it->second;
            if (k >= 1 && (published > 0 || include_inactive)) {
                auto& cell = agg[{t, k}];
                cell.first += 1;
                cell.second += published;
            }
            k += published;
        }
    }

    RateAnalysis out;
    for (const auto& [key, cell] : agg) {
        RatePoint p;
        p.year = key.first;
        p.k = key.second;
        p.n_authors = cell.first;
        p.articles = cell.second;
        p.rate = static_cast<double>(cell.second) / static_cast<double>(cell.first);
        out.points.push_back(p);
    }

    // Pearson correlation between k and rate, pooled over every point.
    const std::size_t n = out.points.size();
    if (n >= 2) {
        double mean_k = 0.0, mean_r = 0.0;
        for (const RatePoint& p : out.points) {
            mean_k += static_cast<double>(p.k);
            mean_r += p.rate;
        }
        mean_k /= static_cast<double>(n);
        mean_r /= static_cast<double>(n);
        double skk = 0.0, srr = 0.0, skr = 0.0;
        for (const RatePoint& p : out.points) {
            double dk = static_cast<double>(p.k) - mean_k;
            double dr = p.rate - mean_r;
            skk += dk * dk;
            srr += dr * dr;
            skr += dk * dr;
        }
        if (skk > 0.0 && srr > 0.0) {
            out.pearson_r = skr / std::sqrt(skk * srr);
            out.r_defined = true;
        }
    }
    if (!out.r_defined) out.pearson_r = std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace tailfit
