#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sdroots/indicial.hpp"

namespace sdroots {

// Σ_k M_k d^k/dt^k acting on C^n. Exponential solutions e^{λt}v satisfy Σ M_k λ^k v = 0.
struct OdeSystem {
    int order = 1;
    std::vector<Eigen::MatrixXcd> coefficients;  // M_0 … M_order
    int dim() const { return coefficients.empty() ? 0 : int(coefficients[0].rows()); }
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RootCluster {
    cplx value;              // cluster mean
    int algebraic = 0;       // cluster size
    int geometric = 0;       // nullity of (C − λI)
    bool jordan() const { return algebraic > geometric; }
};

// Eigenvalues of the block-companion linearization (Hessenberg + shifted QR).
std::vector<cplx> companion_roots(const OdeSystem& ode);
Eigen::MatrixXcd companion_matrix(const OdeSystem& ode);

// Groups eigenvalues within `cluster_tol`·max(1,|λ|) and measures each cluster's
// geometric multiplicity by an SVD nullity test at `nullity_tol`.
std::vector<RootCluster> companion_clusters(const OdeSystem& ode, double cluster_tol = 1e-9,
                                            double nullity_tol = 1e-7);

// First-order 4×4 system for the mixed scalar branch (state φ-coefficients and derivatives).
OdeSystem matrixA(double mu, int kappa);
Eigen::Matrix4d matrixA_entries(double mu, int kappa);

// −½f̈ ± βḟ − (κ + λ/2)f = 0 (helicity ±), β = √(λ+3κ).
OdeSystem type3_ode(double lambda, int kappa, int helicity);
// ḟ = ∓√ν f (first-order reduction fixed by the co-closed constraint).
OdeSystem type2_ode(double nu, int helicity);
// m̈ − νm + 4κm = 0.
OdeSystem mixed_b_ode(double nu, int kappa);

// F = (D, 2δ) on the single Fourier mode ξ of the flat torus, written as a regular
// 14-dimensional first-order system in (h, tf ḣ, α) after eliminating h₀₀ by the trace
// constraint and ḣ₀₀, α̇ by the divergence equations.
OdeSystem flat_mode_pencil(const std::array<int, 3>& xi, const std::array<double, 3>& lattice);

struct RootSetComparison {
    std::vector<cplx> expected;
    std::vector<cplx> actual;
    double max_mismatch = 0.0;
    bool matched = false;
};

// Perfect matching on |e − a| < tol (greedy first, exact augmenting-path fallback).
// Unmatched actual roots with |λ| ≥ truncation_bound are ignored.
RootSetComparison compare_root_sets(const std::vector<cplx>& expected, const std::vector<cplx>& actual,
                                    double tol,
                                    double truncation_bound = std::numeric_limits<double>::infinity());

// Cross-check every catalog entry against the numeric ODE roots. Returns one
// comparison per (origin, branch).
struct OracleCheck {
    std::string label;
    RootSetComparison cmp;
};
std::vector<OracleCheck> verify_catalog_with_oracle(const RootCatalog& cat, double tol = 1e-9);

// Flat-torus end-to-end: per cubic-lattice mode with |ξ|² ≤ max_norm2, compare the
// pencil clusters (values, total multiplicity, Jordan flags) with the κ=0 catalog.
struct PencilModeCheck {
    std::array<int, 3> xi{};
    double eigenvalue = 0.0;
    std::vector<RootCluster> clusters;
    long catalog_dim = 0;       // Σ solution_dim of catalog roots per mode
    int pencil_dim = 0;         // Σ algebraic multiplicities
    double max_value_error = 0;
    bool jordan_agrees = false;
    // Pencil geometric multiplicity vs. the catalog's chain count (Σ multiplicity per mode).
    // Not part of `ok`: at κ = 0 the coincident co-closed roots ±√ν form one extra chain.
    bool chains_agree = true;
    bool ok = false;
};
std::vector<PencilModeCheck> flat_pencil_sweep(const std::array<double, 3>& lattice, int max_norm2);

}  // namespace sdroots
