#include "tailfit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>

#include "tailfit/analysis.hpp"
#include "tailfit/dataset.hpp"
#include "tailfit/distributions.hpp"
#include "tailfit/errors.hpp"
#include "tailfit/fitting.hpp"
#include "tailfit/gof.hpp"
#include "tailfit/rng.hpp"
#include "tailfit/sampling.hpp"

namespace tailfit {

namespace {

using json = nlohmann::ordered_json;

struct Args {
    std::vector<std::string> inputs;
    std::string layout = "value-mult";
    std::string family;
    std::int64_t nmin = 1;
    std::int64_t replicates = 5000;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string out = "-";
    std::string plot_data;
    std::string years;
    std::int64_t window = 10;
    double prominence = 3.0;
    bool progress = false;
    // synth parameters
    std::optional<double> alpha, beta, gamma, rho, lambda;
    std::int64_t draws = 0;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TAILFIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DomainError("cli", std::string("TAILFIT_SEED is not an integer: '") + env + "'");
        }
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string percent2(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
    return buf;
}

CountSample read_counts(const std::string& path, Layout layout) {
    if (path == "-") return load_counts(std::cin, layout, "stdin");
    std::ifstream file(path);
    if (!file) throw DomainError("cli", "cannot open input file '" + path + "'");
    return load_counts(file, layout, path);
}

AuthorCounts read_author_counts(const std::string& path) {
    if (path == "-") return load_author_counts(std::cin);
    std::ifstream file(path);
    if (!file) throw DomainError("cli", "cannot open input file '" + path + "'");
    return load_author_counts(file);
}

EventLog read_events(const std::string& path) {
    if (path == "-") return load_events(std::cin, "stdin");
    std::ifstream file(path);
    if (!file) throw DomainError("cli", "cannot open input file '" + path + "'");
    return load_events(file, path);
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cli", "cannot open output file '" + path + "'");
    file << content;
}

// Resolved run configuration embedded in every output for provenance.
// Thread count and progress reporting are execution details that do not
// affect results, so they are not part of it.
json config_json(const std::string& subcommand, const Args& a, std::uint64_t seed) {
    json c;
    c["subcommand"] = subcommand;
    c["inputs"] = a.inputs;
    c["layout"] = a.layout;
    if (!a.family.empty()) c["family"] = a.family;
    c["nmin"] = a.nmin;
    if (subcommand == "gof") c["replicates"] = a.replicates;
    c["seed"] = seed;
    if (subcommand == "analyze") {
        c["window"] = a.window;
        c["prominence"] = a.prominence;
    }
    if (subcommand == "prefattach") c["years"] = a.years;
    if (subcommand == "synth") {
        json params;
        if (a.alpha) params["alpha"] = *a.alpha;
        if (a.beta) params["beta"] = *a.beta;
        if (a.gamma) params["gamma"] = *a.gamma;
        if (a.rho) params["rho"] = *a.rho;
        if (a.lambda) params["lambda"] = *a.lambda;
        c["params"] = params;
        c["n"] = a.draws;
    }
    c["out"] = a.out;
    if (!a.plot_data.empty()) c["plot_data"] = a.plot_data;
    return c;
}

json fit_json(const FitResult& fr) {
    json j;
    switch (fr.spec.family) {
        case Family::PowerLaw: j["alpha"] = fr.spec.alpha(); break;
        case Family::PowerLawCutoff:
            j["beta"] = fr.spec.beta();
            j["gamma"] = fr.spec.gamma();
            break;
        case Family::YuleSimon: j["rho"] = fr.spec.rho(); break;
        case Family::Exponential: j["lambda"] = fr.spec.lambda(); break;
    }
    j["log_likelihood"] = fr.log_likelihood;
    j["converged"] = fr.converged;
    j["iterations"] = fr.iterations;
    return j;
}

std::string num(double x) { return json(x).dump(); }

constexpr Family kAllFamilies[] = {Family::PowerLaw, Family::PowerLawCutoff, Family::YuleSimon,
                                   Family::Exponential};

int run_fit(const Args& a) {
    std::uint64_t seed = resolve_seed(a.seed);
    const std::string& input = a.inputs.empty() ? "-" : a.inputs.front();
    CountSample data = read_counts(input, layout_from_code(a.layout));
    if (a.nmin > 1) data = truncate_min(data, a.nmin);

    std::vector<Family> families;
    if (a.family.empty())
        families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
    else
        families.push_back(family_from_code(a.family));

    json out;
    out["config"] = config_json("fit", a, seed);
    out["label"] = data.label;
    out["n_authors"] = data.size();
    out["n_min"] = a.nmin;
    json results, errors;
    std::map<Family, FitResult> fits;
    for (Family f : families) {
        try {
            FitResult fr = fit(f, data, a.nmin);
            results[family_code(f)] = fit_json(fr);
            fits.emplace(f, fr);
        } catch (const Error& e) {
            errors[family_code(f)] = e.what();
        }
    }
    out["fits"] = results;
    if (!errors.empty()) out["errors"] = errors;
    if (fits.empty()) throw DomainError("cli", "every requested family failed to fit");

    std::optional<double> bound;
    if (auto it = fits.find(Family::PowerLaw); it != fits.end())
        bound = n_max(data.size(), it->second.spec);
    if (bound) out["n_max"] = *bound;

    if (!a.plot_data.empty()) {
        std::ostringstream plot;
        plot << "# tailfit fit " << config_json("fit", a, seed).dump() << "\n";
        plot << "# columns: n,proportion,pmf_pl,pmf_plwc,pmf_ys,pmf_exp\n";
        if (bound) plot << "# n_max = " << num(*bound) << "\n";
        Histogram hist = proportion_histogram(data);
        std::map<Family, double> log_zs;  // reuse normalizer work across rows
        for (const auto& [f, fr] : fits) log_zs.emplace(f, log_normalizer(fr.spec));
        for (std::int64_t n = data.min_value(); n <= data.max_value(); ++n) {
            auto bin = hist.bins.find(n);
            plot << n << ',' << num(bin == hist.bins.end() ? 0.0 : bin->second);
            for (Family f : kAllFamilies) {
                auto it = fits.find(f);
                plot << ',';
                if (it == fits.end())
                    plot << "nan";
                else
                    plot << num(std::exp(detail::log_unnormalized(it->second.spec, n) -
                                         log_zs.at(f)));
            }
            plot << '\n';
        }
        write_text(a.plot_data, plot.str());
    }
    write_text(a.out, out.dump(2) + "\n");
    return 0;
}

int run_gof(const Args& a) {
    if (a.family.empty()) throw DomainError("cli", "gof requires --family");
    std::uint64_t seed = resolve_seed(a.seed);
    const std::string& input = a.inputs.empty() ? "-" : a.inputs.front();
    CountSample data = read_counts(input, layout_from_code(a.layout));
    if (a.nmin > 1) data = truncate_min(data, a.nmin);

    GofOptions opts;
    opts.replicates = a.replicates;
    opts.seed = seed;
    opts.threads = a.threads;
    std::mutex progress_mu;
    if (a.progress) {
        std::int64_t step = std::max<std::int64_t>(1, a.replicates / 100);
        opts.progress = [&progress_mu, step](std::int64_t done, std::int64_t total) {
            if (done % step == 0 || done == total) {
                std::lock_guard lock(progress_mu);
                std::cerr << "\rreplicates " << done << "/" << total << std::flush;
                if (done == total) std::cerr << "\n";
            }
        };
    }
    GofResult r = gof_test(family_from_code(a.family), data, a.nmin, opts);

    json out;
    out["config"] = config_json("gof", a, seed);
    out["label"] = data.label;
    out["n_authors"] = data.size();
    out["family"] = a.family;
    out["fit"] = fit_json(r.fitted);
    out["observed_ks"] = r.observed_ks;
    out["p_value"] = r.p_value;
    out["p_value_percent"] =
        r.p_value == 0.0 ? "<" + percent2(1.0 / static_cast<double>(r.replicates))
                         : percent2(r.p_value);
    out["rejected_at_5_percent"] = r.p_value < 0.05;
    out["replicates"] = r.replicates;
    out["seed"] = r.seed;
    out["failed_replicates"] = r.failed_replicates;

    if (!a.plot_data.empty()) {
        std::ostringstream plot;
        plot << "# tailfit gof " << config_json("gof", a, seed).dump() << "\n";
        plot << "# replicate KS distances, one per line\n";
        for (double d : r.replicate_ks) plot << num(d) << '\n';
        write_text(a.plot_data, plot.str());
    }
    write_text(a.out, out.dump(2) + "\n");
    return 0;
}

int run_analyze(const Args& a) {
    std::uint64_t seed = resolve_seed(a.seed);
    if (a.inputs.empty()) throw DomainError("cli", "analyze requires --input");
    if (a.inputs.size() > 2) throw DomainError("cli", "analyze takes at most two inputs");
    Layout layout = layout_from_code(a.layout);
    if (layout == Layout::Events)
        throw DomainError("cli", "analyze expects a count layout (per-author or value-mult)");
    const bool two_corpora = a.inputs.size() == 2;
    if (two_corpora && layout != Layout::PerAuthor)
        throw DomainError("cli", "two-corpus analysis needs per-author input to cross author ids");

    json out;
    out["config"] = config_json("analyze", a, seed);
    json corpora = json::array();
    std::vector<AuthorCounts> author_maps;
    for (const std::string& path : a.inputs) {
        CountSample data;
        if (layout == Layout::PerAuthor) {
            AuthorCounts authors = read_author_counts(path);
            data = counts_from_authors(authors, path == "-" ? "stdin" : path);
            author_maps.push_back(std::move(authors));
        } else {
            data = read_counts(path, layout);
        }
        if (a.nmin > 1) data = truncate_min(data, a.nmin);

        json corpus;
        corpus["label"] = data.label;
        corpus["n_authors"] = data.size();
        FitResult pl = fit(Family::PowerLaw, data, a.nmin);
        corpus["fit_pl"] = fit_json(pl);
        KeyPlayerReport report = key_players(data, pl);
        corpus["n_max"] = report.n_max;
        json exceeders = json::array();
        for (const auto& [value, mult] : report.exceeders)
            exceeders.push_back({{"count", value}, {"authors", mult}});
        corpus["key_players"] = exceeders;

        Histogram hist;
        for (const auto& [value, mult] : data.counts)
            hist.bins.emplace(value, static_cast<double>(mult));
        json peaks = json::array();
        for (const Peak& p : detect_peaks(hist, a.window, a.prominence))
            peaks.push_back({{"count", p.value}, {"height", p.height}});
        corpus["peaks"] = peaks;
        corpora.push_back(std::move(corpus));
    }
    out["corpora"] = corpora;

    if (two_corpora) {
        Histogram2D joint = joint_histogram(author_maps[0], author_maps[1]);
        json jj;
        jj["shared_authors"] = joint.total();
        std::vector<std::pair<std::pair<std::int64_t, std::int64_t>, std::int64_t>> cells(
            joint.bins.begin(), joint.bins.end());
        std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
            if (x.second != y.second) return x.second > y.second;
            return x.first < y.first;
        });
        json top = json::array();
        for (std::size_t i = 0; i < cells.size() && i < 10; ++i)
            top.push_back({{"count_a", cells[i].first.first},
                           {"count_b", cells[i].first.second},
                           {"authors", cells[i].second}});
        jj["top_cells"] = top;
        out["joint"] = jj;

        if (!a.plot_data.empty()) {
            std::ostringstream plot;
            plot << "# tailfit analyze " << config_json("analyze", a, seed).dump() << "\n";
            plot << "# columns: count_a,count_b,n_authors\n";
            for (const auto& [cell, count] : joint.bins)
                plot << cell.first << ',' << cell.second << ',' << count << '\n';
            write_text(a.plot_data, plot.str());
        }
    }
    write_text(a.out, out.dump(2) + "\n");
    return 0;
}

int run_prefattach(const Args& a) {
    std::uint64_t seed = resolve_seed(a.seed);
    if (a.years.empty()) throw DomainError("cli", "prefattach requires --years A:B");
    auto colon = a.years.find(':');
    if (colon == std::string::npos)
        throw DomainError("cli", "--years must look like 1999:2008");
    YearRange range{};
    try {
        range.first = std::stoi(a.years.substr(0, colon));
        range.last = std::stoi(a.years.substr(colon + 1));
    } catch (const std::exception&) {
        throw DomainError("cli", "--years must look like 1999:2008");
    }
    const std::string& input = a.inputs.empty() ? "-" : a.inputs.front();
    EventLog log = read_events(input);
    RateAnalysis r = pref_attach_rates(log, range);

    json out;
    out["config"] = config_json("prefattach", a, seed);
    out["label"] = log.label;
    out["n_events"] = log.events.size();
    out["n_points"] = r.points.size();
    if (r.r_defined)
        out["pearson_r"] = r.pearson_r;
    else {
        out["pearson_r"] = nullptr;
        out["pearson_r_note"] = "undefined: zero variance in k or rate";
    }
    json points = json::array();
    for (const RatePoint& p : r.points)
        points.push_back({{"k", p.k},
                          {"year", p.year},
                          {"n_authors", p.n_authors},
                          {"articles", p.articles},
                          {"rate", p.rate}});
    out["points"] = points;

    if (!a.plot_data.empty()) {
        std::ostringstream plot;
        plot << "# tailfit prefattach " << config_json("prefattach", a, seed).dump() << "\n";
        plot << "# columns: k,year,n_authors,articles,rate\n";
        for (const RatePoint& p : r.points)
            plot << p.k << ',' << p.year << ',' << p.n_authors << ',' << p.articles << ','
                 << num(p.rate) << '\n';
        write_text(a.plot_data, plot.str());
    }
    write_text(a.out, out.dump(2) + "\n");
    return 0;
}

int run_synth(const Args& a) {
    std::uint64_t seed = resolve_seed(a.seed);
    if (a.family.empty()) throw DomainError("cli", "synth requires --family");
    if (a.draws < 1) throw DomainError("cli", "synth requires --n >= 1");
    Family family = family_from_code(a.family);
    auto need = [&](const std::optional<double>& p, const char* name) {
        if (!p)
            throw DomainError("cli", "family " + a.family + " needs --" + std::string(name));
        return *p;
    };
    ModelSpec spec;
    switch (family) {
        case Family::PowerLaw: spec = ModelSpec::power_law(need(a.alpha, "alpha"), a.nmin); break;
        case Family::PowerLawCutoff:
            spec = ModelSpec::power_law_cutoff(need(a.beta, "beta"), need(a.gamma, "gamma"),
                                               a.nmin);
            break;
        case Family::YuleSimon: spec = ModelSpec::yule_simon(need(a.rho, "rho"), a.nmin); break;
        case Family::Exponential:
            spec = ModelSpec::exponential(need(a.lambda, "lambda"), a.nmin);
            break;
    }
    SeededRng rng(seed, 0);
    CountSample draws = sample(spec, rng, a.draws);

    std::ostringstream text;
    text << "# tailfit synth " << config_json("synth", a, seed).dump() << "\n";
    text << "# columns: value,multiplicity\n";
    std::ostringstream rows;
    write_counts(rows, draws);
    text << rows.str();
    write_text(a.out, text.str());
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Heavy-tailed analysis of per-author publication counts"};
    app.require_subcommand(1);

    Args a;
    auto add_common = [&](CLI::App* cmd, bool with_family) {
        cmd->add_option("--input", a.inputs, "input file path ('-' for stdin)");
        cmd->add_option("--layout", a.layout, "input layout")
            ->check(CLI::IsMember({"per-author", "value-mult", "events"}));
        if (with_family)
            cmd->add_option("--family", a.family, "distribution family")
                ->check(CLI::IsMember({"pl", "plwc", "ys", "exp"}));
        cmd->add_option("--nmin", a.nmin, "support lower bound")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", a.seed, "random seed (else TAILFIT_SEED, else random)");
        cmd->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--out", a.out, "output path for the JSON report ('-' for stdout)");
        cmd->add_option("--plot-data", a.plot_data, "output path for plot-ready rows");
        cmd->add_flag("--progress", a.progress, "report replicate progress on stderr");
    };

    CLI::App* cmd_fit = app.add_subcommand("fit", "maximum-likelihood fits per family");
    add_common(cmd_fit, true);

    CLI::App* cmd_gof = app.add_subcommand("gof", "parametric-bootstrap goodness of fit");
    add_common(cmd_gof, true);
    cmd_gof->add_option("--replicates", a.replicates, "bootstrap replicates")
        ->check(CLI::PositiveNumber);

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "extreme counts, peaks, joint histogram");
    add_common(cmd_analyze, false);
    cmd_analyze->add_option("--window", a.window, "peak detection half-window")
        ->check(CLI::PositiveNumber);
    cmd_analyze->add_option("--prominence", a.prominence, "peak prominence factor");

    CLI::App* cmd_pref = app.add_subcommand("prefattach", "publication-rate analysis vs. held count");
    add_common(cmd_pref, false);
    cmd_pref->add_option("--years", a.years, "inclusive year range A:B");

    CLI::App* cmd_synth = app.add_subcommand("synth", "draw synthetic samples from a model");
    add_common(cmd_synth, true);
    cmd_synth->add_option("--alpha", a.alpha, "power-law exponent");
    cmd_synth->add_option("--beta", a.beta, "cutoff power exponent");
    cmd_synth->add_option("--gamma", a.gamma, "cutoff decay rate");
    cmd_synth->add_option("--rho", a.rho, "yule-simon exponent");
    cmd_synth->add_option("--lambda", a.lambda, "exponential rate");
    cmd_synth->add_option("--n", a.draws, "number of draws")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_fit->parsed()) return run_fit(a);
        if (cmd_gof->parsed()) return run_gof(a);
        if (cmd_analyze->parsed()) return run_analyze(a);
        if (cmd_pref->parsed()) return run_prefattach(a);
        if (cmd_synth->parsed()) return run_synth(a);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace tailfit
