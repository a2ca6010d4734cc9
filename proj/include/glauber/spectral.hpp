#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "glauber/model.hpp"
#include "glauber/oracle.hpp"

namespace glauber {

// Perron root of an entrywise nonnegative matrix: strongly connected blocks
// are handled separately and each runs power iteration on the primitive
// shift B+I, with the Collatz-Wielandt bracket as the convergence test.
// Relative tolerance 1e-10, iteration cap 1e4 (ConvergenceError beyond).
double spectral_radius(const Eigen::MatrixXd& m);

// Certified upper bound on the largest real root of the characteristic
// polynomial (dimension <= 12): the least x where the polynomial and all its
// derivatives are nonnegative. Cross-check route for spectral_radius.
double perron_upper_bound_charpoly(const Eigen::MatrixXd& m);

// ||D^-1 |M| D||_inf with D(u,u) = deg(u)^(1/chi) for deg >= 1, else 1.
double weighted_inf_norm(const Eigen::MatrixXd& m, const std::vector<int>& degrees, double chi);

Eigen::MatrixXd abs_influence(const InfluenceTable<double>& table);

struct SICertificate {
    std::string model;
    double eta_required = 0.0;
    double eta_observed = 0.0;
    long long pinning_count = 0;
    std::vector<double> eta_by_pinned_count;  // max rho over pinnings of each size
    std::vector<double> field_grid;           // nonempty for complete SI
    bool pass = false;

    std::string to_json() const;
};

// Max spectral radius of |I| over every pinning of at most sites-2 sites.
SICertificate certify_spectral_independence(const GibbsModel& m, double eta, int site_cap = 10);

// Complete spectral independence over a per-site field grid in (0, 1+xi].
SICertificate certify_complete_si(const GibbsModel& m, double eta, double xi,
                                  std::vector<double> grid = {}, int site_cap = 6);

struct TotalInfluenceReport {
    double lhs = 0.0;        // sum_u |I_G(r,u)| deg(u)^(1/chi), tree route
    double tree_side = 0.0;  // sum over tree nodes |I_T(r,.)| deg_T^(1/chi)
    double alpha = 0.0;      // d-branching value at r
    int deg_r = 0;
    double ratio = 0.0;      // lhs / (alpha * deg_r)^(1/chi)
    double chi = 0.0;
};
TotalInfluenceReport total_influence_report(const Graph& g, int r, const GibbsModel& m, double d);

struct SssyResult {
    double lhs = 0.0;
    double x_next = 0.0;
};
// One step of the potential contraction: x_next = lambda * prod 1/(1+x_i),
// lhs = Phi(x_next)^a * sum_i (x_next/((1+x_i)Phi(x_i)))^a with
// Phi(x) = 1/sqrt(x(x+1)); terms at x_i = 0 vanish by the algebraic form.
SssyResult sssy_check(double d, double lambda, const std::vector<double>& x);

struct KappaEstimate {
    double kappa = 0.0;
    int k_of_max = 0;
    std::vector<double> argmax;
    int grid_points = 0;
    int k_max = 0;
};
// kappa_hat = max over k <= k_max and x in [0, lambda]^k of lhs^(chi/a),
// dense grids for k <= 3 plus diagonal grids and coordinate ascent beyond.
KappaEstimate estimate_kappa(double d, double lambda, int k_max, int grid_points = 64);

// Spectral gap lower bound (1-phi)^(2+2 eta) / n^(1+2 eta).
double si_gap_bound(int n, double eta, double phi);

}  // namespace glauber
