#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tailfit {

/// Multiset of per-author publication counts for one corpus, stored as a
/// value -> multiplicity map.
struct CountSample {
    std::map<std::int64_t, std::int64_t> counts;
    std::string label;

    std::int64_t size() const;       // total multiplicity N_J
    std::int64_t min_value() const;  // smallest observed count
    std::int64_t max_value() const;
    std::int64_t multiplicity(std::int64_t value) const;
    void add(std::int64_t value, std::int64_t multiplicity = 1);

    static CountSample from_values(std::span<const std::int64_t> values, std::string label = "");
};

struct Event {
    std::string author;
    int year = 0;
};

/// Time-stamped (author, year) publication events for one corpus.
/// Repeated (author, year) pairs mean several papers that year.
struct EventLog {
    std::vector<Event> events;
    std::string label;
};

struct Histogram {
    std::map<std::int64_t, double> bins;
    bool normalized = false;
};

/// Per-author aggregated counts, keyed by the opaque author id.
using AuthorCounts = std::map<std::string, std::int64_t>;

enum class Layout { PerAuthor, ValueMultiplicity, Events };

std::string layout_code(Layout layout);              // "per-author" | "value-mult" | "events"
Layout layout_from_code(std::string_view code);      // throws DomainError

/// Parses either accepted count layout. Lines starting with '#' are
/// skipped so provenance-stamped tool output can be fed back in.
/// Throws ParseError with a line number on malformed rows and
/// DomainError on empty input.
CountSample load_counts(std::istream& in, Layout layout, std::string label = "");

/// Per-author layout only; retains the author ids (needed to cross two
/// corpora). Rejects duplicate and blank ids.
AuthorCounts load_author_counts(std::istream& in);

/// author_id,year rows; years restricted to [1900, 2100].
EventLog load_events(std::istream& in, std::string label = "");

/// value,multiplicity rows (reloadable with Layout::ValueMultiplicity).
void write_counts(std::ostream& out, const CountSample& data);

/// Drops every value below n_min. Throws DomainError if nothing remains.
CountSample truncate_min(const CountSample& data, std::int64_t n_min);

/// Per-author counts over events with year <= cutoff_year.
AuthorCounts author_counts_through(const EventLog& log, int cutoff_year);

/// Counts per author over events with year <= cutoff_year; authors with no
/// retained events drop out. Throws DomainError if the result is empty.
CountSample reduce_by_year(const EventLog& log, int cutoff_year);

CountSample counts_from_authors(const AuthorCounts& authors, std::string label = "");

/// bins[n] = multiplicity(n) / N_J; proportions sum to 1.
Histogram proportion_histogram(const CountSample& data);

/// Right-continuous empirical step function S(k) = |{x <= k}| / N_J.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(const CountSample& data);

    double operator()(std::int64_t k) const;

    const std::vector<std::int64_t>& values() const noexcept { return values_; }

private:
    std::vector<std::int64_t> values_;  // sorted distinct values
    std::vector<double> cum_;           // cum_[i] = S(values_[i])
};

EmpiricalCdf empirical_cdf(const CountSample& data);

}  // namespace tailfit
