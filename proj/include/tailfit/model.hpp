#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tailfit {

enum class Family {
    PowerLaw,        // pmf(n) ∝ n^-alpha
    PowerLawCutoff,  // pmf(n) ∝ n^-beta * exp(-gamma n)
    YuleSimon,       // pmf(n) ∝ (rho-1) * B(n, rho)
    Exponential,     // pmf(n) ∝ exp(-lambda n)
};

std::string family_name(Family f);                 // "power-law", "power-law-cutoff", ...
std::string family_code(Family f);                 // "pl", "plwc", "ys", "exp"
Family family_from_code(std::string_view code);    // throws DomainError on unknown code
std::size_t param_count(Family f);

/// A fully specified discrete distribution on the support
/// {n_min, n_min+1, ...}. Parameter layout by family:
///   PowerLaw        {alpha},        alpha > 1
///   PowerLawCutoff  {beta, gamma},  gamma > 0 (any real beta is normalizable)
///   YuleSimon       {rho},          rho > 1
///   Exponential     {lambda},       lambda > 0
/// Normalizing constants are derived, never stored.
struct ModelSpec {
    Family family = Family::PowerLaw;
    std::vector<double> params;
    std::int64_t n_min = 1;

    static ModelSpec power_law(double alpha, std::int64_t n_min = 1);
    static ModelSpec power_law_cutoff(double beta, double gamma, std::int64_t n_min = 1);
    static ModelSpec yule_simon(double rho, std::int64_t n_min = 1);
    static ModelSpec exponential(double lambda, std::int64_t n_min = 1);

    double alpha() const;   // PowerLaw only
    double beta() const;    // PowerLawCutoff only
    double gamma() const;   // PowerLawCutoff only
    double rho() const;     // YuleSimon only
    double lambda() const;  // Exponential only

    /// Throws DomainError if the parameter invariants above are violated
    /// or n_min < 1.
    void validate() const;

    bool operator==(const ModelSpec&) const = default;
};

}  // namespace tailfit
