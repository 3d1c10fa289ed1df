#include "tailfit/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

#include "tailfit/distributions.hpp"
#include "tailfit/errors.hpp"

namespace tailfit {

namespace {

double log_z_for(Family family, const std::vector<double>& params, std::int64_t n_min) {
    ModelSpec spec{family, params, n_min};
    return log_normalizer(spec);
}

// Log-likelihood through the multiplicity map with a single normalizer
// evaluation; assumes the data was validated against n_min by the caller.
double loglik_params(Family family, const std::vector<double>& params, std::int64_t n_min,
                     const CountSample& data) {
    ModelSpec spec{family, params, n_min};
    double sum = 0.0;
    for (const auto& [value, mult] : data.counts)
        sum += static_cast<double>(mult) * detail::log_unnormalized(spec, value);
    return sum - static_cast<double>(data.size()) * log_normalizer(spec);
}

struct ScalarMax {
    double x = 0.0;
    double fx = 0.0;
    long evals = 0;
    bool converged = false;
    double width = 0.0;
};

// Golden-section maximization on [lo, hi]; assumes a unimodal profile.
// Flat stretches tie-break toward the smaller argument.
ScalarMax golden_max(const std::function<double(double)>& f, double lo, double hi, double tol,
                     long max_iter = 300) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    ScalarMax r;
    r.evals = 2;
    while (b - a > tol && r.evals < max_iter) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        ++r.evals;
    }
    double fa = f(a), fb = f(b);
    r.evals += 2;
    std::array<std::pair<double, double>, 4> cand{{{a, fa}, {x1, f1}, {x2, f2}, {b, fb}}};
    std::sort(cand.begin(), cand.end());
    double best = std::max({fa, f1, f2, fb});
    double slack = 1e-12 * (1.0 + std::abs(best));
    for (const auto& [x, fx] : cand) {
        if (fx >= best - slack) {
            r.x = x;
            r.fx = fx;
            break;
        }
    }
    r.width = b - a;
    r.converged = r.width <= tol;
    return r;
}

FitResult fit_scalar(Family family, const CountSample& data, std::int64_t n_min, double lo,
                     double hi) {
    auto objective = [&](double p) { return loglik_params(family, {p}, n_min, data); };
    ScalarMax best = golden_max(objective, lo, hi, search_box::kParamTol);
    FitResult result;
    result.spec = ModelSpec{family, {best.x}, n_min};
    result.spec.validate();
    result.log_likelihood = loglik_params(family, {best.x}, n_min, data);
    result.iterations = best.evals;
    result.converged = best.converged;
    result.diagnostics = {best.width};
    return result;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> out;
    out.reserve(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        out.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    return out;
}

struct SimplexResult {
    std::array<double, 2> x{};
    double fx = -std::numeric_limits<double>::infinity();
    long evals = 0;
    bool converged = false;
    double spread_beta = 0.0;
    double spread_gamma = 0.0;
};

// Nelder-Mead maximization over (beta, log gamma), with proposals clamped
// into the search box. Termination on the simplex parameter spread in
// natural units.
SimplexResult nelder_mead_plwc(const std::function<double(double, double)>& f, double beta0,
                               double gamma0, double step_beta, double step_loggamma,
                               long max_iter = 400) {
    using Point = std::array<double, 2>;  // (beta, log gamma)
    auto clamp_point = [](Point p) {
        p[0] = std::clamp(p[0], search_box::kBetaLo, search_box::kBetaHi);
        p[1] = std::clamp(p[1], std::log(search_box::kGammaRefineLo),
                          std::log(search_box::kGammaHi));
        return p;
    };
    SimplexResult res;
    auto eval = [&](const Point& p) {
        ++res.evals;
        return f(p[0], std::exp(p[1]));
    };

    std::array<Point, 3> v;
    v[0] = clamp_point({beta0, std::log(gamma0)});
    v[1] = clamp_point({beta0 + step_beta, std::log(gamma0)});
    v[2] = clamp_point({beta0, std::log(gamma0) + step_loggamma});
    std::array<double, 3> fv{eval(v[0]), eval(v[1]), eval(v[2])};

    auto order = [&] {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] > fv[b]; });
        std::array<Point, 3> nv{v[idx[0]], v[idx[1]], v[idx[2]]};
        std::array<double, 3> nf{fv[idx[0]], fv[idx[1]], fv[idx[2]]};
        v = nv;
        fv = nf;
    };
    auto spreads = [&] {
        double bmin = std::min({v[0][0], v[1][0], v[2][0]});
        double bmax = std::max({v[0][0], v[1][0], v[2][0]});
        double gmin = std::exp(std::min({v[0][1], v[1][1], v[2][1]}));
        double gmax = std::exp(std::max({v[0][1], v[1][1], v[2][1]}));
        res.spread_beta = bmax - bmin;
        res.spread_gamma = gmax - gmin;
    };

    for (long iter = 0; iter < max_iter; ++iter) {
        order();
        spreads();
        if (res.spread_beta < search_box::kParamTol && res.spread_gamma < search_box::kParamTol) {
            res.converged = true;
            break;
        }
        Point centroid{(v[0][0] + v[1][0]) / 2.0, (v[0][1] + v[1][1]) / 2.0};
        auto affine = [&](double t) {
            return clamp_point({centroid[0] + t * (v[2][0] - centroid[0]),
                                centroid[1] + t * (v[2][1] - centroid[1])});
        };
        Point refl = affine(-1.0);
        double f_refl = eval(refl);
        if (f_refl > fv[0]) {
            Point expd = affine(-2.0);
            double f_expd = eval(expd);
            if (f_expd > f_refl) {
                v[2] = expd;
                fv[2] = f_expd;
            } else {
                v[2] = refl;
                fv[2] = f_refl;
            }
        } else if (f_refl > fv[1]) {
            v[2] = refl;
            fv[2] = f_refl;
        } else {
            Point contr = affine(0.5);
            double f_contr = eval(contr);
            if (f_contr > fv[2]) {
                v[2] = contr;
                fv[2] = f_contr;
            } else {  // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    v[i] = clamp_point({v[0][0] + 0.5 * (v[i][0] - v[0][0]),
                                        v[0][1] + 0.5 * (v[i][1] - v[0][1])});
                    fv[i] = eval(v[i]);
                }
            }
        }
    }
    order();
    spreads();
    res.x = {v[0][0], std::exp(v[0][1])};
    res.fx = fv[0];
    return res;
}

FitResult fit_plwc(const CountSample& data, std::int64_t n_min) {
    if (data.counts.size() == 1 && data.min_value() == n_min)
        throw DegenerateDataError(
            "fitting",
            "every observation equals n_min; the cutoff likelihood has no interior maximum");

    auto objective = [&](double beta, double gamma) {
        return loglik_params(Family::PowerLawCutoff, {beta, gamma}, n_min, data);
    };

    long evals = 0;
    struct Cell {
        double ll, beta, gamma;
    };
    std::vector<Cell> cells;
    const auto gammas = log_spaced(search_box::kGammaGridLo, search_box::kGammaHi, 22);
    for (double gamma : gammas) {
        double beta_lo =
            gamma > search_box::kBetaRelaxGamma ? search_box::kBetaLo : search_box::kBetaGridLo;
        for (double beta : log_spaced(beta_lo, search_box::kBetaHi, 16)) {
            cells.push_back({objective(beta, gamma), beta, gamma});
            ++evals;
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.ll != b.ll) return a.ll > b.ll;
        if (a.beta != b.beta) return a.beta < b.beta;
        return a.gamma < b.gamma;
    });

    const double grid_best_ll = cells.front().ll;
    SimplexResult best;
    bool have_best = false;
    const int restarts = std::min<std::size_t>(3, cells.size());
    for (int r = 0; r < restarts; ++r) {
        const Cell& start = cells[static_cast<std::size_t>(r)];
        SimplexResult s = nelder_mead_plwc(objective, start.beta, start.gamma, 0.1, 0.35);
        evals += s.evals;
        bool better = !have_best || s.fx > best.fx + 1e-12 * (1.0 + std::abs(best.fx));
        bool tie = have_best && !better && s.fx > best.fx - 1e-12 * (1.0 + std::abs(best.fx));
        if (better || (tie && std::tie(s.x[0], s.x[1]) < std::tie(best.x[0], best.x[1]))) {
            best = s;
            have_best = true;
        }
    }

    FitResult result;
    result.spec = ModelSpec::power_law_cutoff(best.x[0], best.x[1], n_min);
    result.log_likelihood = objective(best.x[0], best.x[1]);
    result.iterations = evals;
    result.converged = best.converged && result.log_likelihood >= grid_best_ll - 1e-9;
    result.diagnostics = {best.spread_beta, best.spread_gamma};
    return result;
}

}  // namespace

double loglik(const ModelSpec& spec, const CountSample& data) {
    spec.validate();
    if (data.counts.empty()) throw DomainError("fitting", "empty sample");
    if (data.min_value() < spec.n_min)
        throw DomainError("fitting", "data contains values below the support lower bound");
    return loglik_params(spec.family, spec.params, spec.n_min, data);
}

FitResult fit(Family family, const CountSample& data, std::int64_t n_min) {
    if (n_min < 1) throw DomainError("fitting", "n_min must be >= 1");
    if (data.counts.empty()) throw DomainError("fitting", "empty sample");
    if (data.min_value() < n_min)
        throw DomainError("fitting", "data contains values below the support lower bound");
    switch (family) {
        case Family::PowerLaw:
            return fit_scalar(family, data, n_min, search_box::kAlphaLo, search_box::kAlphaHi);
        case Family::YuleSimon:
            return fit_scalar(family, data, n_min, search_box::kRhoLo, search_box::kRhoHi);
        case Family::Exponential:
            return fit_scalar(family, data, n_min, search_box::kLambdaLo, search_box::kLambdaHi);
        case Family::PowerLawCutoff:
            return fit_plwc(data, n_min);
    }
    throw DomainError("fitting", "unknown family");
}

}  // namespace tailfit
