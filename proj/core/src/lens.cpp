// Γ-invariant harmonic polynomials on R^4 for cyclic Γ = Z_p acting by a pair of
// plane rotations. The multiplicity is the trace of the averaging projector
// (1/p) Σ_k g^k restricted to the harmonic subspace of degree-j polynomials.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "sdroots/spectra.hpp"

namespace sdroots {
namespace {

using Exp = std::array<int, 4>;

// Dense basis of degree-d monomials in 4 variables.
struct MonomialBasis {
    std::vector<Exp> exps;
    std::map<Exp, int> index;

    explicit MonomialBasis(int d) {
        for (int a = d; a >= 0; --a)
            for (int b = d - a; b >= 0; --b)
                for (int c = d - a - b; c >= 0; --c) {
                    Exp e{a, b, c, d - a - b - c};
                    index[e] = int(exps.size());
                    exps.push_back(e);
                }
    }
    int size() const { return int(exps.size()); }
};

// Δ : P_d -> P_{d-2}
Eigen::MatrixXd laplacian_matrix(const MonomialBasis& from, const MonomialBasis& to) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(to.size(), from.size());
    for (int col = 0; col < from.size(); ++col) {
        const Exp& e = from.exps[col];
        for (int i = 0; i < 4; ++i) {
            if (e[i] < 2) continue;
            Exp f = e;
            f[i] -= 2;
            M(to.index.at(f), col) += double(e[i]) * (e[i] - 1);
        }
    }
    return M;
}

// Substitution x -> R x acting on P_d: column for x^e is the expansion of Π_i (R x)_i^{e_i}.
Eigen::MatrixXd substitution_matrix(const Eigen::Matrix4d& R, const std::vector<MonomialBasis>& bases,
                                    int d) {
    const MonomialBasis& B = bases[d];
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(B.size(), B.size());
    for (int col = 0; col < B.size(); ++col) {
        const Exp& e = B.exps[col];
        Eigen::VectorXd poly = Eigen::VectorXd::Ones(1);  // degree 0
        int deg = 0;
        for (int i = 0; i < 4; ++i)
            for (int r = 0; r < e[i]; ++r) {
                // multiply by linear form Σ_k R(i,k) x_k
                const MonomialBasis& cur = bases[deg];
                const MonomialBasis& nxt = bases[deg + 1];
                Eigen::VectorXd out = Eigen::VectorXd::Zero(nxt.size());
                for (int m = 0; m < cur.size(); ++m) {
                    if (poly[m] == 0.0) continue;
                    for (int k = 0; k < 4; ++k) {
                        if (R(i, k) == 0.0) continue;
                        Exp f = cur.exps[m];
                        ++f[k];
                        out[nxt.index.at(f)] += poly[m] * R(i, k);
                    }
                }
                poly = std::move(out);
                ++deg;
            }
        G.col(col) = poly;
    }
    return G;
}

Eigen::Matrix4d generator(const LensAction& a) {
    const double t1 = 2.0 * std::numbers::pi * a.q1 / a.p;
    const double t2 = 2.0 * std::numbers::pi * a.q2 / a.p;
    Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
    R(0, 0) = std::cos(t1), R(0, 1) = -std::sin(t1);
    R(1, 0) = std::sin(t1), R(1, 1) = std::cos(t1);
    R(2, 2) = std::cos(t2), R(2, 3) = -std::sin(t2);
    R(3, 2) = std::sin(t2), R(3, 3) = std::cos(t2);
    return R;
}

// Trace of g^k on P_d is the complete homogeneous symmetric polynomial of the
// eigenvalues e^{±iθ1}, e^{±iθ2}; H_d ≅ P_d ⊖ |x|^2 P_{d-2} as Γ-modules.
double character_formula_multiplicity(const LensAction& a, int j) {
    auto h = [&](int d, double t1, double t2) {
        const std::array<std::complex<double>, 4> z{std::polar(1.0, t1), std::polar(1.0, -t1),
                                                    std::polar(1.0, t2), std::polar(1.0, -t2)};
        std::vector<std::complex<double>> e(d + 1, 0.0);
        e[0] = 1.0;
        for (auto zi : z)
            for (int n = 1; n <= d; ++n) e[n] += zi * e[n - 1];
        return e[d].real();
    };
    double acc = 0.0;
    for (int k = 0; k < a.p; ++k) {
        const double t1 = 2.0 * std::numbers::pi * a.q1 * k / a.p;
        const double t2 = 2.0 * std::numbers::pi * a.q2 * k / a.p;
        acc += h(j, t1, t2) - (j >= 2 ? h(j - 2, t1, t2) : 0.0);
    }
    return acc / a.p;
}

constexpr int kExplicitProjectorMaxDegree = 14;

}  // namespace

LensProjectorReport lens_projector_report(const LensAction& action, int j) {
    if (j < 0) throw SpectrumError("degree must be non-negative");
    if (action.p < 1) throw SpectrumError("lens order p must be >= 1");
    std::vector<MonomialBasis> bases;
    for (int d = 0; d <= j; ++d) bases.emplace_back(d);

    // Orthonormal basis of ker Δ ⊂ P_j.
    Eigen::MatrixXd Q;
    if (j < 2) {
        Q = Eigen::MatrixXd::Identity(bases[j].size(), bases[j].size());
    } else {
        Eigen::MatrixXd L = laplacian_matrix(bases[j], bases[j - 2]);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const double tol = 1e-9 * std::max(1.0, s.size() ? s[0] : 1.0);
        int rank = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s[i] > tol) ++rank;
        Q = svd.matrixV().rightCols(bases[j].size() - rank);
    }

    LensProjectorReport rep;
    rep.harmonic_dim = Q.cols();
    const Eigen::MatrixXd G = substitution_matrix(generator(action), bases, j);
    const Eigen::MatrixXd M = Q.transpose() * G * Q;  // g restricted to H_j
    Eigen::MatrixXd Mk = Eigen::MatrixXd::Identity(Q.cols(), Q.cols());
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(Q.cols(), Q.cols());
    for (int k = 0; k < action.p; ++k) {
        P += Mk;
        Mk = M * Mk;
    }
    P /= double(action.p);
    rep.projector_trace = P.trace();
    rep.idempotency_residual = (P * P - P).norm();
    return rep;
}

long lens_scalar_multiplicity(const LensAction& action, int j) {
    if (action.trivial()) return sphere_scalar_multiplicity(j);
    const double t = j <= kExplicitProjectorMaxDegree ? lens_projector_report(action, j).projector_trace
                                                      : character_formula_multiplicity(action, j);
    return std::lround(t);
}

}  // namespace sdroots
