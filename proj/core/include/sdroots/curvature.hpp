#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdroots/fields.hpp"

namespace sdroots {

class CurvatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Packed symmetric 4×4 index: (00,01,02,03,11,12,13,22,23,33).
inline constexpr int pair4(int a, int b) {
    constexpr int t[4][4] = {{0, 1, 2, 3}, {1, 4, 5, 6}, {2, 5, 7, 8}, {3, 6, 8, 9}};
    return t[a][b];
}

// Periodic samples of a Riemannian metric on T_t × T^3, coordinates (t, y1, y2, y3).
struct MetricGrid4D {
    std::array<int, 4> n{};          // (N_t, N1, N2, N3)
    std::array<double, 4> period{};  // (P_t, L1, L2, L3)
    std::vector<std::array<double, 10>> g;

    static MetricGrid4D flat(std::array<int, 4> n, std::array<double, 4> period);
    size_t size() const { return size_t(n[0]) * n[1] * n[2] * n[3]; }
    size_t index(int it, int i1, int i2, int i3) const {
        return ((size_t(it) * n[1] + i1) * n[2] + i2) * n[3] + i3;
    }
    std::array<double, 4> coords(size_t p) const;
    Eigen::Matrix4d at(size_t p) const;
    void validate() const;  // throws on non-positive-definite samples
};

// Bivector basis (01, 02, 03, 23, 31, 12): the curvature operator as a 6×6 matrix.
using Bivector6 = Eigen::Matrix<double, 6, 6>;

struct CurvatureGrid {
    std::array<int, 4> n{};
    std::array<double, 4> period{};
    std::vector<std::array<double, 40>> christoffel;  // Γ^c_ab at [c*10 + pair4(a,b)]
    std::vector<Bivector6> riemann;                   // coordinate components R_{abcd}
    std::vector<Eigen::Matrix4d> frame;               // columns: orthonormal frame g^{-1/2}
    double max_riemann = 0.0;
    double symmetry_residual = 0.0;  // max |R_abcd + R_bacd|, |R_abcd − R_cdab| / max|R|
    double bianchi_residual = 0.0;   // max |R_a[bcd]| / max|R|

    double christoffel_at(size_t p, int c, int a, int b) const { return christoffel[p][c * 10 + pair4(a, b)]; }
    double riemann_at(size_t p, int a, int b, int c, int d) const;
};

CurvatureGrid christoffel_riemann(const MetricGrid4D& m);

// Per-point S²₀(T*Y) fields in the orthonormal frame, components (11,12,13,22,23,33).
struct WMinusField {
    std::vector<std::array<double, 6>> w, phi, psi, omega;
    double omega_shortcut_residual = 0.0;  // ε-contraction vs −tf(c_Y R) form
    double max_trace = 0.0;                // of W⁻ (trace-free by construction)
    double max_raw_trace_defect = 0.0;     // |tr(P − (Q+Qᵀ) + S) − scal/2|
};

WMinusField wminus_bilinear(const CurvatureGrid& c);

// Frame components of Ricci (4×4) at each point; used for cross-checks.
std::vector<Eigen::Matrix4d> frame_ricci(const CurvatureGrid& c);

// Samples t-periodic cylinder fields (rates i·m·2π/P_t, degree 0) onto the grid.
std::vector<std::array<double, 10>> sample_split_tensor(const CylTensor& ht, std::array<int, 4> n,
                                                        std::array<double, 4> period);
std::vector<std::array<double, 6>> sample_sym(const CylSym& z, std::array<int, 4> n, std::array<double, 4> period);

struct FdResult {
    double rel_error = 0.0;
    double abs_error = 0.0;
    double d_norm = 0.0;
};

// ‖[W⁻(g+εh̃) − W⁻(g−εh̃)]/(2ε) − D(h̃)‖ / ‖D(h̃)‖ on the flat product background.
FdResult fd_linearization_check(const CylTensor& ht, double eps, int N,
                                std::array<double, 4> period = {6.283185307179586, 6.283185307179586,
                                                                6.283185307179586, 6.283185307179586});

// Real random t-periodic variation with spatial modes |ξ|∞ ≤ max_mode and t-modes |m| ≤ max_t_mode,
// normalised to unit RMS per active block. `mask` bits: 1 = h00, 2 = α, 4 = h.
CylTensor random_periodic_variation(const ModeSpace& s, int max_mode, int max_t_mode, double t_period,
                                    unsigned mask, FieldRng& rng);

struct FdCase {
    std::string name;
    FdResult at_eps, at_half_eps;
    double order_ratio = 0.0;
    bool pass = false;
};

struct FdBatteryConfig {
    int N = 16;
    double eps = 1e-4;
    std::uint64_t seed = 2024;
    double tolerance = 1e-6;
    double min_ratio = 3.5;
};
std::vector<FdCase> run_fd_battery(const FdBatteryConfig& cfg);

std::string curvature_norms_json(const CurvatureGrid& c, const WMinusField& w);

}  // namespace sdroots
