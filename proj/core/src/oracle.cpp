#include "sdroots/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "sdroots/fields.hpp"

namespace sdroots {

// ---- companion linearization --------------------------------------------------

Eigen::MatrixXcd companion_matrix(const OdeSystem& ode) {
    if (ode.order < 1 || int(ode.coefficients.size()) != ode.order + 1)
        throw OracleError("ODE system needs order >= 1 and order+1 coefficient matrices");
    const int d = ode.dim();
    for (auto& M : ode.coefficients)
        if (M.rows() != d || M.cols() != d) throw OracleError("coefficient matrices must be square and equal-sized");
    const Eigen::MatrixXcd& lead = ode.coefficients.back();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(lead);
    if (lu.rank() < d) throw OracleError("leading coefficient matrix is singular");

    const int n = ode.order;
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n * d, n * d);
    for (int b = 0; b + 1 < n; ++b) C.block(b * d, (b + 1) * d, d, d).setIdentity();
    for (int k = 0; k < n; ++k) C.block((n - 1) * d, k * d, d, d) = -lu.solve(ode.coefficients[k]);
    return C;
}

std::vector<cplx> companion_roots(const OdeSystem& ode) {
    const Eigen::MatrixXcd C = companion_matrix(ode);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es;
    es.setMaxIterations(500);
    es.compute(C, false);
    if (es.info() != Eigen::Success) throw OracleError("QR iteration did not converge");
    std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
    });
    return out;
}

std::vector<RootCluster> companion_clusters(const OdeSystem& ode, double cluster_tol, double nullity_tol) {
    const Eigen::MatrixXcd C = companion_matrix(ode);
    const auto ev = companion_roots(ode);

    // single-linkage clustering
    std::vector<int> label(ev.size(), -1);
    int nlab = 0;
    for (size_t i = 0; i < ev.size(); ++i) {
        if (label[i] >= 0) continue;
        label[i] = nlab;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            const size_t a = stack.back();
            stack.pop_back();
            for (size_t b = 0; b < ev.size(); ++b)
                if (label[b] < 0 && std::abs(ev[a] - ev[b]) < cluster_tol * std::max(1.0, std::abs(ev[a]))) {
                    label[b] = nlab;
                    stack.push_back(b);
                }
        }
        ++nlab;
    }

    const double scale = std::max(1.0, C.operatorNorm());
    std::vector<RootCluster> out(nlab);
    for (size_t i = 0; i < ev.size(); ++i) {
        out[label[i]].value += ev[i];
        ++out[label[i]].algebraic;
    }
    for (auto& c : out) {
        c.value /= double(c.algebraic);
        const Eigen::MatrixXcd S = C - c.value * Eigen::MatrixXcd::Identity(C.rows(), C.cols());
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
        const auto& sv = svd.singularValues();
        c.geometric = 0;
        for (int k = 0; k < sv.size(); ++k)
            if (sv[k] < nullity_tol * scale) ++c.geometric;
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        return std::make_pair(a.value.real(), a.value.imag()) < std::make_pair(b.value.real(), b.value.imag());
    });
    return out;
}

// ---- ODE systems ----------------------------------------------------------------

namespace {

OdeSystem scalar_ode(std::initializer_list<cplx> coeffs) {
    OdeSystem s;
    s.order = int(coeffs.size()) - 1;
    for (cplx c : coeffs) s.coefficients.push_back(Eigen::MatrixXcd::Constant(1, 1, c));
    return s;
}

}  // namespace

Eigen::Matrix4d matrixA_entries(double mu, int kappa) {
    Eigen::Matrix4d A;
    A << 0, 1, 0, 0,
         2.0 * mu / 3.0, 0, 0, mu / 3.0,
         0, 0, 0, 1,
         0, -0.5, 1.5 * mu - 4.0 * kappa, 0;
    return A;
}

OdeSystem matrixA(double mu, int kappa) {
    if (mu < 0) throw OracleError("mu must be non-negative");
    OdeSystem s;
    s.order = 1;
    s.coefficients = {-matrixA_entries(mu, kappa).cast<cplx>(), Eigen::MatrixXcd::Identity(4, 4)};
    return s;
}

OdeSystem type3_ode(double lambda, int kappa, int helicity) {
    const double b2 = lambda + 3.0 * kappa;
    if (b2 < -1e-12) throw OracleError("lambda + 3 kappa must be non-negative");
    const double beta = std::sqrt(std::max(0.0, b2));
    return scalar_ode({-(kappa + lambda / 2.0), helicity >= 0 ? beta : -beta, -0.5});
}

OdeSystem type2_ode(double nu, int helicity) {
    if (nu < -1e-12) throw OracleError("nu must be non-negative");
    const double r = std::sqrt(std::max(0.0, nu));
    return scalar_ode({helicity >= 0 ? r : -r, 1.0});
}

OdeSystem mixed_b_ode(double nu, int kappa) { return scalar_ode({-(nu - 4.0 * kappa), 0.0, 1.0}); }

// ---- flat mode pencil -------------------------------------------------------------

namespace {

// Orthonormal basis of traceless symmetric 3×3 matrices (full double-sum product).
std::array<Sym6c, 5> traceless_basis() {
    const double r2 = 1.0 / std::sqrt(2.0), r6 = 1.0 / std::sqrt(6.0);
    std::array<Sym6c, 5> E{};
    E[0] = {r2, 0, 0, -r2, 0, 0};
    E[1] = {r6, 0, 0, r6, 0, -2.0 * r6};
    E[2] = {0, r2, 0, 0, 0, 0};
    E[3] = {0, 0, r2, 0, 0, 0};
    E[4] = {0, 0, 0, 0, r2, 0};
    return E;
}

cplx pair(const Sym6c& a, const Sym6c& b) {
    cplx s = 0;
    for (int c = 0; c < 6; ++c) s += kSymWeight[c] * a[c] * b[c];
    return s;
}

}  // namespace

OdeSystem flat_mode_pencil(const std::array<int, 3>& xi, const std::array<double, 3>& lattice) {
    const double tp = 2.0 * std::numbers::pi;
    const Vec3 k{tp * xi[0] / lattice[0], tp * xi[1] / lattice[1], tp * xi[2] / lattice[2]};
    const auto E = traceless_basis();

    // state X = (h: 6, tf ḣ: 5 coordinates, α: 3)
    auto rhs = [&](const Eigen::VectorXcd& X) {
        Sym6c h{};
        for (int c = 0; c < 6; ++c) h[c] = X[c];
        Sym6c q{};
        for (int a = 0; a < 5; ++a)
            for (int c = 0; c < 6; ++c) q[c] += X[6 + a] * E[a][c];
        const Vec3c alpha{X[11], X[12], X[13]};

        const cplx trh = symbol::trace(h);
        const cplx h00 = -trh;  // trace constraint
        // δ-equations: ḣ00 + δα = 0 and α̇ + δh = 0
        const cplx trh_dot = symbol::div(k, alpha);
        Sym6c hdot = q;
        for (int c : {0, 3, 5}) hdot[c] += trh_dot / 3.0;
        Vec3c adot = symbol::div(k, h);
        for (auto& x : adot) x = -x;

        // D = 0 solved for tf ḧ
        Vec3c w{};
        const Vec3c g00 = symbol::grad(k, h00), gtr = symbol::grad(k, trh), dh = symbol::div(k, h),
                    ca = symbol::curl(k, alpha);
        for (int i = 0; i < 3; ++i) w[i] = -0.5 * g00[i] - dh[i] + adot[i] - ca[i] + 0.5 * gtr[i];
        const Sym6c Kw = symbol::conf_killing(k, w);
        const Sym6c sd = symbol::slash_d(k, hdot);
        const Sym6c tfh = symbol::trace_free(h);
        Sym6c qdot{};
        for (int c = 0; c < 6; ++c) qdot[c] = Kw[c] + sd[c] - symbol::k2(k) * tfh[c];

        Eigen::VectorXcd out(14);
        for (int c = 0; c < 6; ++c) out[c] = hdot[c];
        for (int a = 0; a < 5; ++a) out[6 + a] = pair(E[a], qdot);
        for (int i = 0; i < 3; ++i) out[11 + i] = adot[i];
        return out;
    };

    Eigen::MatrixXcd A(14, 14);
    for (int col = 0; col < 14; ++col) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(14);
        e[col] = 1.0;
        A.col(col) = rhs(e);
    }
    OdeSystem s;
    s.order = 1;
    s.coefficients = {-A, Eigen::MatrixXcd::Identity(14, 14)};
    return s;
}

// ---- root-set comparison ----------------------------------------------------------

RootSetComparison compare_root_sets(const std::vector<cplx>& expected, const std::vector<cplx>& actual, double tol,
                                    double truncation_bound) {
    if (!(tol > 0)) throw OracleError("tolerance must be positive");
    RootSetComparison r{expected, actual, 0.0, false};
    const size_t ne = expected.size(), na = actual.size();
    std::vector<int> match_a(na, -1), match_e(ne, -1);

    // greedy: nearest unused actual
    for (size_t e = 0; e < ne; ++e) {
        double best = tol;
        int bi = -1;
        for (size_t a = 0; a < na; ++a) {
            const double d = std::abs(expected[e] - actual[a]);
            if (match_a[a] < 0 && d < best) best = d, bi = int(a);
        }
        if (bi >= 0) match_a[bi] = int(e), match_e[e] = bi;
    }
    // exact: augmenting paths for the rest
    if (std::count(match_e.begin(), match_e.end(), -1) > 0) {
        std::function<bool(size_t, std::vector<char>&)> augment = [&](size_t e, std::vector<char>& seen) {
            for (size_t a = 0; a < na; ++a) {
                if (seen[a] || std::abs(expected[e] - actual[a]) >= tol) continue;
                seen[a] = 1;
                if (match_a[a] < 0 || augment(size_t(match_a[a]), seen)) {
                    match_a[a] = int(e), match_e[e] = int(a);
                    return true;
                }
            }
            return false;
        };
        for (size_t e = 0; e < ne; ++e)
            if (match_e[e] < 0) {
                std::vector<char> seen(na, 0);
                augment(e, seen);
            }
    }

    bool ok = true;
    for (size_t e = 0; e < ne; ++e) {
        if (match_e[e] < 0) {
            ok = false;
            double d = std::numeric_limits<double>::infinity();
            for (size_t a = 0; a < na; ++a) d = std::min(d, std::abs(expected[e] - actual[a]));
            r.max_mismatch = std::max(r.max_mismatch, d);
        } else {
            r.max_mismatch = std::max(r.max_mismatch, std::abs(expected[e] - actual[match_e[e]]));
        }
    }
    for (size_t a = 0; a < na; ++a)
        if (match_a[a] < 0 && std::abs(actual[a]) < truncation_bound) ok = false;
    r.matched = ok;
    return r;
}

// ---- catalog cross-check -----------------------------------------------------------

namespace {

std::vector<cplx> distinct(const std::vector<cplx>& v, double tol) {
    std::vector<cplx> out;
    for (cplx x : v)
        if (std::none_of(out.begin(), out.end(), [&](cplx y) { return std::abs(x - y) < tol; })) out.push_back(x);
    return out;
}

}  // namespace

std::vector<OracleCheck> verify_catalog_with_oracle(const RootCatalog& cat, double tol) {
    const int kappa = cat.cross_section.kappa;
    // group catalog values by (kind, j, case)
    std::map<std::tuple<int, int, int>, std::pair<RootOrigin, std::vector<cplx>>> groups;
    for (auto& r : cat.roots) {
        auto& g = groups[{int(r.origin.kind), r.origin.j, int(r.case_tag)}];
        g.first = r.origin;
        g.second.push_back(r.value);
    }

    std::vector<OracleCheck> out;
    for (auto& [key, g] : groups) {
        const auto [kind, j, tag] = key;
        const RootOrigin& o = g.first;
        const CaseTag ct = CaseTag(tag);
        std::vector<cplx> numeric;
        auto add = [&](const OdeSystem& s) {
            for (auto& c : companion_clusters(s, 1e-6)) numeric.push_back(c.value);
        };
        const double ev = o.eigenvalue;
        bool subset = false;  // conformal Killing roots are a subset of the ODE's roots
        switch (ct) {
            case CaseTag::Case2: add(type3_ode(ev, kappa, +1)), add(type3_ode(ev, kappa, -1)); break;
            case CaseTag::Case3: add(type2_ode(ev, +1)), add(type2_ode(ev, -1)); break;
            case CaseTag::Case4: add(matrixA(ev, kappa)); break;
            case CaseTag::Case5: add(mixed_b_ode(ev, kappa)); break;
            case CaseTag::Case0:
            case CaseTag::Case1:
                subset = true;
                if (OperatorKind(kind) == OperatorKind::ScalarHodge) add(matrixA(ev, kappa));
                else add(mixed_b_ode(ev, kappa));
                break;
        }
        std::ostringstream label;
        label << "case" << tag << " " << to_string(OperatorKind(kind)) << " j=" << j << " eigenvalue=" << ev;
        auto cmp = compare_root_sets(distinct(g.second, tol), distinct(numeric, 1e-6), tol,
                                     subset ? 0.0 : std::numeric_limits<double>::infinity());
        out.push_back({label.str(), cmp});
    }
    return out;
}

// ---- flat end-to-end sweep ------------------------------------------------------------

std::vector<PencilModeCheck> flat_pencil_sweep(const std::array<double, 3>& lattice, int max_norm2) {
    const auto scal = torus_spectrum(lattice, OperatorKind::ScalarHodge, double(max_norm2));
    const RootCatalog cat = assemble_catalog(CrossSectionSpec::torus(lattice), int(scal.size()) - 1);

    std::vector<PencilModeCheck> out;
    const double tp = 2.0 * std::numbers::pi;
    const int R = int(std::ceil(std::sqrt(double(max_norm2)) * std::max({lattice[0], lattice[1], lattice[2]}) / tp));
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b)
            for (int c = -R; c <= R; ++c) {
                const double k0 = tp * a / lattice[0], k1 = tp * b / lattice[1], k2 = tp * c / lattice[2];
                const double s = k0 * k0 + k1 * k1 + k2 * k2;
                if (s > max_norm2 * (1 + 1e-12)) continue;

                PencilModeCheck chk;
                chk.xi = {a, b, c};
                chk.eigenvalue = s;
                chk.clusters = companion_clusters(flat_mode_pencil(chk.xi, lattice), 1e-6, 1e-7);
                for (auto& cl : chk.clusters) chk.pencil_dim += cl.algebraic;

                long nmodes = 0;
                for (auto& e : scal)
                    if (std::abs(e.eigenvalue - s) <= 1e-9 * std::max(1.0, s)) nmodes = e.multiplicity;

                // catalog data per distinct value at this eigenvalue
                struct Expect { cplx v; long dim = 0; long chains = 0; bool jordan = false; };
                std::vector<Expect> exp;
                for (auto& r : cat.roots) {
                    if (std::abs(r.origin.eigenvalue - s) > 1e-9 * std::max(1.0, s)) continue;
                    auto it = std::find_if(exp.begin(), exp.end(),
                                           [&](const Expect& e) { return std::abs(e.v - r.value) < 1e-9; });
                    if (it == exp.end()) exp.push_back({r.value}), it = exp.end() - 1;
                    it->dim += r.solution_dim();
                    it->chains += r.multiplicity;
                    it->jordan = it->jordan || r.jordan;
                }
                bool ok = nmodes > 0;
                chk.jordan_agrees = true;
                for (auto& e : exp) {
                    chk.catalog_dim += e.dim;
                    auto it = std::min_element(chk.clusters.begin(), chk.clusters.end(), [&](auto& x, auto& y) {
                        return std::abs(x.value - e.v) < std::abs(y.value - e.v);
                    });
                    if (it == chk.clusters.end()) { ok = false; continue; }
                    chk.max_value_error = std::max(chk.max_value_error, std::abs(it->value - e.v));
                    if (nmodes > 0 && (e.dim % nmodes != 0 || it->algebraic != e.dim / nmodes)) ok = false;
                    // independent eigenvectors = number of Jordan chains (diagnostic only)
                    if (nmodes > 0 && (e.chains % nmodes != 0 || it->geometric != e.chains / nmodes))
                        chk.chains_agree = false;
                    if (it->jordan() != e.jordan) chk.jordan_agrees = false;
                }
                if (nmodes > 0) {
                    if (chk.catalog_dim % nmodes != 0) ok = false;
                    chk.catalog_dim /= nmodes;
                }
                ok = ok && chk.jordan_agrees && chk.catalog_dim == chk.pencil_dim &&
                     chk.clusters.size() == exp.size() && chk.max_value_error < 1e-8;
                chk.ok = ok;
                out.push_back(chk);
            }
    return out;
}

}  // namespace sdroots
