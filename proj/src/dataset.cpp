#include "tailfit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>

#include "tailfit/errors.hpp"

namespace tailfit {

std::int64_t CountSample::size() const {
    std::int64_t total = 0;
    for (const auto& [value, mult] : counts) total += mult;
    return total;
}

std::int64_t CountSample::min_value() const {
    if (counts.empty()) throw DomainError("dataset", "empty sample has no minimum");
    return counts.begin()->first;
}

std::int64_t CountSample::max_value() const {
    if (counts.empty()) throw DomainError("dataset", "empty sample has no maximum");
    return counts.rbegin()->first;
}

std::int64_t CountSample::multiplicity(std::int64_t value) const {
    auto it = counts.find(value);
    return it == counts.end() ? 0 : it->second;
}

void CountSample::add(std::int64_t value, std::int64_t multiplicity) {
    if (value < 1) throw DomainError("dataset", "counts must be positive");
    if (multiplicity < 1) throw DomainError("dataset", "multiplicity must be positive");
    counts[value] += multiplicity;
}

CountSample CountSample::from_values(std::span<const std::int64_t> values, std::string label) {
    CountSample s;
    s.label = std::move(label);
    for (std::int64_t v : values) s.add(v);
    return s;
}

std::string layout_code(Layout layout) {
    switch (layout) {
        case Layout::PerAuthor: return "per-author";
        case Layout::ValueMultiplicity: return "value-mult";
        case Layout::Events: return "events";
    }
    return "?";
}

Layout layout_from_code(std::string_view code) {
    if (code == "per-author") return Layout::PerAuthor;
    if (code == "value-mult") return Layout::ValueMultiplicity;
    if (code == "events") return Layout::Events;
    throw DomainError("dataset", "unknown layout '" + std::string(code) +
                                     "' (expected per-author|value-mult|events)");
}

namespace {

// One id,number row per line; CRLF tolerated, '#' lines skipped, format
// detection deliberately refused (the layout is the caller's statement).
struct LineReader {
    std::istream& in;
    std::size_t line_no = 0;

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;  // blank separators tolerated
            if (line[0] == '#') continue;
            return true;
        }
        return false;
    }
};

std::int64_t parse_int(std::string_view text, std::size_t line_no, const char* what) {
    std::int64_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("dataset", line_no, std::string("invalid ") + what + " '" +
                                                 std::string(text) + "'");
    return value;
}

std::pair<std::string_view, std::string_view> split_comma(std::string_view line,
                                                          std::size_t line_no) {
    auto pos = line.find(',');
    if (pos == std::string_view::npos)
        throw ParseError("dataset", line_no, "expected two comma-separated fields");
    return {line.substr(0, pos), line.substr(pos + 1)};
}

}  // namespace

CountSample load_counts(std::istream& in, Layout layout, std::string label) {
    if (layout == Layout::Events)
        throw DomainError("dataset", "events layout does not decode to a count sample directly");
    CountSample sample;
    sample.label = std::move(label);
    LineReader reader{in};
    std::string line;
    std::set<std::string> seen_ids;
    while (reader.next(line)) {
        auto [left, right] = split_comma(line, reader.line_no);
        if (layout == Layout::PerAuthor) {
            if (left.empty())
                throw ParseError("dataset", reader.line_no, "blank/anonymous author id");
            if (!seen_ids.insert(std::string(left)).second)
                throw ParseError("dataset", reader.line_no,
                                 "duplicate author id '" + std::string(left) + "'");
            std::int64_t count = parse_int(right, reader.line_no, "count");
            if (count <= 0) throw ParseError("dataset", reader.line_no, "count must be positive");
            sample.add(count);
        } else {
            std::int64_t value = parse_int(left, reader.line_no, "value");
            std::int64_t mult = parse_int(right, reader.line_no, "multiplicity");
            if (value <= 0) throw ParseError("dataset", reader.line_no, "value must be positive");
            if (mult <= 0)
                throw ParseError("dataset", reader.line_no, "multiplicity must be positive");
            sample.add(value, mult);
        }
    }
    if (sample.counts.empty()) throw DomainError("dataset", "empty input");
    return sample;
}

AuthorCounts load_author_counts(std::istream& in) {
    AuthorCounts authors;
    LineReader reader{in};
    std::string line;
    while (reader.next(line)) {
        auto [id, count_text] = split_comma(line, reader.line_no);
        if (id.empty()) throw ParseError("dataset", reader.line_no, "blank/anonymous author id");
        std::int64_t count = parse_int(count_text, reader.line_no, "count");
        if (count <= 0) throw ParseError("dataset", reader.line_no, "count must be positive");
        if (!authors.emplace(std::string(id), count).second)
            throw ParseError("dataset", reader.line_no,
                             "duplicate author id '" + std::string(id) + "'");
    }
    if (authors.empty()) throw DomainError("dataset", "empty input");
    return authors;
}

EventLog load_events(std::istream& in, std::string label) {
    EventLog log;
    log.label = std::move(label);
    LineReader reader{in};
    std::string line;
    while (reader.next(line)) {
        auto [id, year_text] = split_comma(line, reader.line_no);
        if (id.empty()) throw ParseError("dataset", reader.line_no, "blank/anonymous author id");
        std::int64_t year = parse_int(year_text, reader.line_no, "year");
        if (year < 1900 || year > 2100)
            throw ParseError("dataset", reader.line_no,
                             "year " + std::to_string(year) + " outside [1900, 2100]");
        log.events.push_back({std::string(id), static_cast<int>(year)});
    }
    if (log.events.empty()) throw DomainError("dataset", "empty input");
    return log;
}

void write_counts(std::ostream& out, const CountSample& data) {
    for (const auto& [value, mult] : data.counts) out << value << ',' << mult << '\n';
}

CountSample truncate_min(const CountSample& data, std::int64_t n_min) {
    if (n_min < 1) throw DomainError("dataset", "n_min must be >= 1");
    CountSample out;
    out.label = data.label;
    for (const auto& [value, mult] : data.counts)
        if (value >= n_min) out.counts.emplace(value, mult);
    if (out.counts.empty())
        throw DomainError("dataset", "truncation at n_min=" + std::to_string(n_min) +
                                         " removes every observation");
    return out;
}

AuthorCounts author_counts_through(const EventLog& log, int cutoff_year) {
    AuthorCounts authors;
    for (const Event& e : log.events)
        if (e.year <= cutoff_year) ++authors[e.author];
    return authors;
}

CountSample reduce_by_year(const EventLog& log, int cutoff_year) {
    if (cutoff_year < 1900) throw DomainError("dataset", "cutoff year must be >= 1900");
    AuthorCounts authors = author_counts_through(log, cutoff_year);
    if (authors.empty())
        throw DomainError("dataset", "no events at or before " + std::to_string(cutoff_year));
    return counts_from_authors(authors, log.label);
}

CountSample counts_from_authors(const AuthorCounts& authors, std::string label) {
    CountSample out;
    out.label = std::move(label);
    for (const auto& [id, count] : authors) out.add(count);
    return out;
}

Histogram proportion_histogram(const CountSample& data) {
    if (data.counts.empty()) throw DomainError("dataset", "empty sample");
    Histogram h;
    h.normalized = true;
    const double total = static_cast<double>(data.size());
    for (const auto& [value, mult] : data.counts)
        h.bins.emplace(value, static_cast<double>(mult) / total);
    return h;
}

EmpiricalCdf::EmpiricalCdf(const CountSample& data) {
    if (data.counts.empty()) throw DomainError("dataset", "empty sample");
    const double total = static_cast<double>(data.size());
    values_.reserve(data.counts.size());
    cum_.reserve(data.counts.size());
    std::int64_t running = 0;
    for (const auto& [value, mult] : data.counts) {
        running += mult;
        values_.push_back(value);
        cum_.push_back(static_cast<double>(running) / total);
    }
}

double EmpiricalCdf::operator()(std::int64_t k) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), k);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

EmpiricalCdf empirical_cdf(const CountSample& data) { return EmpiricalCdf(data); }

}  // namespace tailfit
