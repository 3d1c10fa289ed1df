#include "tailfit/model.hpp"

#include <cmath>

#include "tailfit/errors.hpp"

namespace tailfit {

std::string family_name(Family f) {
    switch (f) {
        case Family::PowerLaw: return "power-law";
        case Family::PowerLawCutoff: return "power-law-cutoff";
        case Family::YuleSimon: return "yule-simon";
        case Family::Exponential: return "exponential";
    }
    return "unknown";
}

std::string family_code(Family f) {
    switch (f) {
        case Family::PowerLaw: return "pl";
        case Family::PowerLawCutoff: return "plwc";
        case Family::YuleSimon: return "ys";
        case Family::Exponential: return "exp";
    }
    return "?";
}

Family family_from_code(std::string_view code) {
    if (code == "pl" || code == "power-law") return Family::PowerLaw;
    if (code == "plwc" || code == "power-law-cutoff") return Family::PowerLawCutoff;
    if (code == "ys" || code == "yule-simon") return Family::YuleSimon;
    if (code == "exp" || code == "exponential") return Family::Exponential;
    throw DomainError("model", "unknown family code '" + std::string(code) +
                                   "' (expected pl|plwc|ys|exp)");
}

std::size_t param_count(Family f) {
    return f == Family::PowerLawCutoff ? 2 : 1;
}

ModelSpec ModelSpec::power_law(double alpha, std::int64_t n_min) {
    ModelSpec s{Family::PowerLaw, {alpha}, n_min};
    s.validate();
    return s;
}

ModelSpec ModelSpec::power_law_cutoff(double beta, double gamma, std::int64_t n_min) {
    ModelSpec s{Family::PowerLawCutoff, {beta, gamma}, n_min};
    s.validate();
    return s;
}

ModelSpec ModelSpec::yule_simon(double rho, std::int64_t n_min) {
    ModelSpec s{Family::YuleSimon, {rho}, n_min};
    s.validate();
    return s;
}

ModelSpec ModelSpec::exponential(double lambda, std::int64_t n_min) {
    ModelSpec s{Family::Exponential, {lambda}, n_min};
    s.validate();
    return s;
}

namespace {

double param_at(const ModelSpec& s, Family expected, std::size_t i, const char* name) {
    if (s.family != expected)
        throw DomainError("model", std::string(name) + " requested from a " +
                                       family_name(s.family) + " spec");
    return s.params.at(i);
}

}  // namespace

double ModelSpec::alpha() const { return param_at(*this, Family::PowerLaw, 0, "alpha"); }
double ModelSpec::beta() const { return param_at(*this, Family::PowerLawCutoff, 0, "beta"); }
double ModelSpec::gamma() const { return param_at(*this, Family::PowerLawCutoff, 1, "gamma"); }
double ModelSpec::rho() const { return param_at(*this, Family::YuleSimon, 0, "rho"); }
double ModelSpec::lambda() const { return param_at(*this, Family::Exponential, 0, "lambda"); }

void ModelSpec::validate() const {
    if (n_min < 1) throw DomainError("model", "n_min must be >= 1");
    if (params.size() != param_count(family))
        throw DomainError("model", family_name(family) + " takes " +
                                       std::to_string(param_count(family)) + " parameter(s)");
    for (double p : params)
        if (!std::isfinite(p)) throw DomainError("model", "non-finite parameter");
    switch (family) {
        case Family::PowerLaw:
            if (!(params[0] > 1.0))
                throw DomainError("model", "power-law requires alpha > 1");
            break;
        case Family::PowerLawCutoff:
            if (!(params[1] > 0.0))
                throw DomainError("model", "power-law-cutoff requires gamma > 0");
            break;
        case Family::YuleSimon:
            if (!(params[0] > 1.0))
                throw DomainError("model", "yule-simon requires rho > 1");
            break;
        case Family::Exponential:
            if (!(params[0] > 0.0))
                throw DomainError("model", "exponential requires lambda > 0");
            break;
    }
}

}  // namespace tailfit
