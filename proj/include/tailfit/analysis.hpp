#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tailfit/dataset.hpp"
#include "tailfit/fitting.hpp"
#include "tailfit/model.hpp"

namespace tailfit {

/// Largest count a power-law corpus of n_authors authors is expected to
/// contain: the count at which the predicted number of authors drops to
/// one, (N * C)^(1/alpha) with C the normalizing constant. Power-law
/// specs only.
double n_max(std::int64_t n_authors, const ModelSpec& spec);

struct KeyPlayerReport {
    double n_max = 0.0;
    // (count value, multiplicity) for every value strictly above n_max.
    std::vector<std::pair<std::int64_t, std::int64_t>> exceeders;
    double fitted_alpha = 0.0;
    std::int64_t n_authors = 0;
};

/// Counts exceeding the power-law bound implied by the fit. An empty
/// exceeder list is a valid result.
KeyPlayerReport key_players(const CountSample& data, const FitResult& power_law_fit);

struct Histogram2D {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> bins;
    std::int64_t total() const;
};

/// Joint histogram over authors present in BOTH corpora; the bin key is
/// (count in a, count in b).
Histogram2D joint_histogram(const AuthorCounts& a, const AuthorCounts& b);

struct Peak {
    std::int64_t value = 0;
    double height = 0.0;
};

/// A bin is a peak when it has at least one populated bin on each side
/// within +-window, its height strictly exceeds every other in-window
/// height, and it exceeds min_prominence times the median in-window
/// height. Peaks are returned sorted by height descending.
std::vector<Peak> detect_peaks(const Histogram& h, std::int64_t window, double min_prominence);

struct RatePoint {
    std::int64_t k = 0;           // publications held at the start of the year
    int year = 0;
    std::int64_t n_authors = 0;   // authors holding k that also publish this year
    std::int64_t articles = 0;    // their publications during the year
    double rate = 0.0;            // articles / n_authors
};

struct RateAnalysis {
    std::vector<RatePoint> points;  // ordered by (year, k)
    double pearson_r = 0.0;         // over (k, rate) across all points
    bool r_defined = false;         // false when either coordinate has zero variance
};

struct YearRange {
    int first = 0;
    int last = 0;
};

/// Publication-rate analysis on [years.first, years.last]: for each year t,
/// an author's k is their event count through t-1; authors enter N_k(t)
/// only if k >= 1 and (unless include_inactive) they publish at least once
/// during t; m_k(t) sums their year-t events. Emits one point per (k, t)
/// with N_k >= 1 plus the Pearson correlation between k and rate.
RateAnalysis pref_attach_rates(const EventLog& log, YearRange years,
                               bool include_inactive = false);

}  // namespace tailfit
