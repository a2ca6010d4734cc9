#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "glauber/model.hpp"
#include "glauber/oracle.hpp"

namespace glauber {

// min{ 2k^2 (1+lambda+1/lambda)^(2k+2),
//      3 log(1+lambda+1/lambda) ((1+lambda)k)^(2+2eta) },
// second branch only when eta is supplied.
double at_bound_hardcore(int k, double lambda, std::optional<double> eta = std::nullopt);

// Monomer-dimer variant: first branch only.
double at_bound_monomer_dimer(int k, double lambda);

struct SIParams {
    double eta = 0.0;
    double xi = 0.0;
    double zeta = 0.0;
};

struct EntropyBounds {
    double alpha = 0.0;
    double block_c = 0.0;
    int ell = 0;
};

// alpha = min{1/(2 eta), log(1+xi)/(log(1+xi)+log(2 zeta))}.
double si_alpha(const SIParams& si);

// C = (e n / ell)^(1+1/alpha); requires ell >= 1/alpha.
EntropyBounds alpha_and_block_c(const SIParams& si, int n, int ell);

// ceil(C n (max(0, log log(1/mu_min)) + log 2 + 2)); the inner log log is
// clamped at zero since mu_min may exceed 1/e on tiny supports.
long long tmix_upper_from_at(double c_at, int n, double mu_min);

// theta = 1/(400 e Delta (1+lambda+1/lambda)^2).
double md_theta(double lambda, int max_degree);

struct FunctionalCheck {
    bool pass = false;
    double max_ratio = 0.0;     // max Ent / (rhs sum); the implied constant
    long long functions = 0;
};

// Test functions: `trials` log-uniform random f plus indicator and smoothed
// indicator adversaries for every configuration.
std::vector<std::vector<double>> test_functions(const SupportTable<double>& st, int trials,
                                                uint64_t seed);

// Ent(f) <= C sum_v mu(Ent_v(f)) over the generated test functions.
FunctionalCheck verify_tensorization(const GibbsModel& m, double c, int trials, uint64_t seed);

// Ent(f) <= C / binom(n, ell) * sum_{|S|=ell} mu(Ent_S(f)), exact subset sums.
FunctionalCheck verify_block_factorization(const GibbsModel& m, int ell, double c, int trials,
                                           uint64_t seed);

// Per-boundary product-structure inequality over the components of g[S]:
// Ent_S^tau(f) <= sum_U mu_S^tau[Ent_U(f)] for every S and every feasible tau.
FunctionalCheck verify_component_decomposition(const GibbsModel& m, int trials, uint64_t seed);

// "model,inequality,constant,max_ratio,functions,pass" log row.
std::string functional_check_csv(const std::string& model, const std::string& inequality,
                                 double constant, const FunctionalCheck& check);

}  // namespace glauber
