#include <doctest.h>

#include <sstream>

#include "tailfit/dataset.hpp"
#include "tailfit/errors.hpp"
#include "tailfit/rng.hpp"

using namespace tailfit;

TEST_CASE("per-author layout aggregates counts") {
    std::istringstream in("a,3\nb,1\nc,3\n");
    CountSample s = load_counts(in, Layout::PerAuthor);
    CHECK(s.size() == 3);
    CHECK(s.multiplicity(3) == 2);
    CHECK(s.multiplicity(1) == 1);
    CHECK(s.min_value() == 1);
}

TEST_CASE("value,multiplicity layout loads directly") {
    std::istringstream in("1,100\n2,50\n");
    CountSample s = load_counts(in, Layout::ValueMultiplicity);
    CHECK(s.multiplicity(1) == 100);
    CHECK(s.multiplicity(2) == 50);
    CHECK(s.size() == 150);
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("zero count") {
        std::istringstream in("a,0\n");
        try {
            load_counts(in, Layout::PerAuthor);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("malformed number on a later line") {
        std::istringstream in("a,3\nb,x2\n");
        try {
            load_counts(in, Layout::PerAuthor);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("missing comma") {
        std::istringstream in("a 3\n");
        CHECK_THROWS_AS(load_counts(in, Layout::PerAuthor), ParseError);
    }
}

TEST_CASE("duplicate and anonymous author ids are rejected") {
    {
        std::istringstream in("a,3\na,2\n");
        CHECK_THROWS_AS(load_counts(in, Layout::PerAuthor), ParseError);
    }
    {
        std::istringstream in(",4\n");
        CHECK_THROWS_AS(load_counts(in, Layout::PerAuthor), ParseError);
    }
}

TEST_CASE("empty input is a domain error") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_counts(in, Layout::PerAuthor), DomainError);
    std::istringstream comments("# nothing but provenance\n");
    CHECK_THROWS_AS(load_counts(comments, Layout::ValueMultiplicity), DomainError);
}

TEST_CASE("CRLF endings and comment lines are tolerated") {
    std::istringstream in("# written by a previous run\r\n5,2\r\n7,1\r\n");
    CountSample s = load_counts(in, Layout::ValueMultiplicity);
    CHECK(s.size() == 3);
    CHECK(s.multiplicity(5) == 2);
}

TEST_CASE("events load with year validation") {
    std::istringstream in("a,2001\na,2001\nb,2003\n");
    EventLog log = load_events(in);
    CHECK(log.events.size() == 3);
    AuthorCounts authors = author_counts_through(log, 2100);
    CHECK(authors.size() == 2);
    CHECK(authors["a"] == 2);

    std::istringstream bad("a,19x1\n");
    CHECK_THROWS_AS(load_events(bad), ParseError);
    std::istringstream out_of_range("a,1492\n");
    CHECK_THROWS_AS(load_events(out_of_range), ParseError);
}

TEST_CASE("large synthetic event file conserves its row count") {
    std::ostringstream gen;
    const int rows = 100000;
    for (int i = 0; i < rows; ++i)
        gen << "author" << i % 997 << ',' << 1950 + i % 60 << '\n';
    std::istringstream in(gen.str());
    EventLog log = load_events(in);
    CHECK(log.events.size() == static_cast<std::size_t>(rows));
}

TEST_CASE("truncate_min drops small values") {
    CountSample s;
    s.counts = {{1, 10}, {2, 5}, {3, 2}};
    CountSample t = truncate_min(s, 3);
    CHECK(t.counts == std::map<std::int64_t, std::int64_t>{{3, 2}});
    CHECK(t.size() == 2);

    SUBCASE("empty result is an error") {
        CountSample ones;
        ones.counts = {{1, 10}};
        CHECK_THROWS_AS(truncate_min(ones, 2), DomainError);
    }
    SUBCASE("n_min = 1 is the identity") { CHECK(truncate_min(s, 1).counts == s.counts); }
    SUBCASE("idempotent") {
        CHECK(truncate_min(truncate_min(s, 2), 2).counts == truncate_min(s, 2).counts);
    }
}

TEST_CASE("reduce_by_year filters events, then counts per author") {
    EventLog log;
    log.events = {{"a", 1940}, {"a", 1960}, {"b", 1945}};
    CountSample s = reduce_by_year(log, 1950);
    CHECK(s.size() == 2);
    CHECK(s.multiplicity(1) == 2);

    SUBCASE("cutoff before all events") {
        CHECK_THROWS_AS(reduce_by_year(log, 1930), DomainError);
    }
    SUBCASE("cutoff after all events equals the full aggregation") {
        CountSample all = reduce_by_year(log, 2100);
        CHECK(all.multiplicity(2) == 1);  // author a
        CHECK(all.multiplicity(1) == 1);  // author b
    }
}

TEST_CASE("proportion histogram normalizes to one") {
    CountSample s;
    s.counts = {{1, 3}, {2, 1}};
    Histogram h = proportion_histogram(s);
    CHECK(h.normalized);
    CHECK(h.bins.at(1) == doctest::Approx(0.75));
    CHECK(h.bins.at(2) == doctest::Approx(0.25));

    CountSample single;
    single.counts = {{5, 7}};
    CHECK(proportion_histogram(single).bins.at(5) == doctest::Approx(1.0));

    CountSample wide;
    for (std::int64_t v = 1; v <= 200; ++v) wide.add(v, v % 7 + 1);
    double total = 0.0;
    for (const auto& [value, p] : proportion_histogram(wide).bins) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical cdf is a right-continuous step function") {
    CountSample s;
    s.counts = {{1, 3}, {2, 1}};
    EmpiricalCdf cdf(s);
    CHECK(cdf(0) == 0.0);
    CHECK(cdf(1) == doctest::Approx(0.75));
    CHECK(cdf(2) == doctest::Approx(1.0));
    CHECK(cdf(100) == doctest::Approx(1.0));

    CountSample single;
    single.counts = {{5, 7}};
    EmpiricalCdf one(single);
    CHECK(one(4) == 0.0);
    CHECK(one(5) == doctest::Approx(1.0));
}

TEST_CASE("value,multiplicity round trip is exact") {
    SeededRng rng(404, 0);
    for (int trial = 0; trial < 20; ++trial) {
        CountSample s;
        int distinct = 1 + static_cast<int>(rng.next_u64() % 40);
        for (int i = 0; i < distinct; ++i)
            s.add(1 + static_cast<std::int64_t>(rng.next_u64() % 5000),
                  1 + static_cast<std::int64_t>(rng.next_u64() % 1000));
        std::ostringstream out;
        write_counts(out, s);
        std::istringstream in(out.str());
        CountSample back = load_counts(in, Layout::ValueMultiplicity);
        CHECK(back.counts == s.counts);
    }
}

TEST_CASE("reduce_by_year at the last year matches the full aggregation") {
    SeededRng rng(777, 1);
    EventLog log;
    int max_year = 1900;
    for (int i = 0; i < 5000; ++i) {
        int year = 1900 + static_cast<int>(rng.next_u64() % 80);
        max_year = std::max(max_year, year);
        log.events.push_back({"a" + std::to_string(rng.next_u64() % 300), year});
    }
    Histogram lhs = proportion_histogram(reduce_by_year(log, max_year));
    Histogram rhs = proportion_histogram(counts_from_authors(author_counts_through(log, 2100)));
    CHECK(lhs.bins == rhs.bins);
}

TEST_CASE("events layout cannot masquerade as counts") {
    std::istringstream in("a,2001\n");
    CHECK_THROWS_AS(load_counts(in, Layout::Events), DomainError);
}
