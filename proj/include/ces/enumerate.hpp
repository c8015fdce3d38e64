#pragma once

// Enumeration of product rays in a subspace.
//
// The workhorse is a random-restart alternating minimization of
// f(u_1..u_k) = ||(I - P_S) kron(u)||^2 over unit local factors.  With all
// modes but j frozen, f is a Hermitian quadratic form in u_j whose minimizer
// is the smallest-eigenvalue eigenvector of a small d_j x d_j matrix.
// Accepted limit points are certified by their membership residual; the
// count tau is trusted only when the restart stream saturates.
//
// Alongside the search sit the closed-form solvers and the infinite-family
// generators for the perturbed Parthasarathy and UPB-complement spaces.

#include "ces/constructions.hpp"
#include "ces/core.hpp"
#include "ces/product.hpp"
#include "ces/subspace.hpp"

#include <algorithm>
#include <random>

namespace ces {

struct SearchConfig {
    int restarts = 400;
    int max_iters = 500;
    std::uint64_t seed = 0;
    int infinite_threshold = 25;  // distinct rays before tagging INFINITE
    // Cluster radius for identifying converged candidates with one another:
    // near rigid rays the objective is extremely flat, so distinct restarts
    // stall at slightly different points around the same true ray.  Each
    // cluster keeps its smallest-residual member as representative.
    double ray_merge_tol = 1e-4;
    Tolerances tol{};

    void validate() const {
        if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
        if (max_iters < 10) throw std::invalid_argument("max_iters must be >= 10");
        tol.validate();
    }
};

struct EnumerationResult {
    std::vector<ProductVector> rays;   // neat, pairwise ray-distinct
    std::vector<double> residuals;     // membership residual per ray
    bool infinite = false;             // INFINITE tag
    bool likely_infinite = false;      // heuristic flag from the search
    std::vector<ProductVector> family_samples;  // attached when infinite
    int restarts_used = 0;
    int converged_restarts = 0;
    std::uint64_t seed = 0;

    int tau() const { return infinite ? -1 : static_cast<int>(rays.size()); }
};

namespace detail {

inline VectorXcd random_unit_factor(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    VectorXcd f(d);
    for (int t = 0; t < d; ++t) f(t) = cd(g(rng), g(rng));
    return f / f.norm();
}

// D x d_j map u_j -> kron(..., u_j, ...) with the other factors frozen.
inline MatrixXcd mode_map(const SystemShape& shape, const std::vector<VectorXcd>& factors,
                          int j) {
    const long D = shape.total_dim();
    MatrixXcd A = MatrixXcd::Zero(D, shape.dim(j));
    for (long f = 0; f < D; ++f) {
        IndexTuple t = shape.tuple_of(f);
        cd coef = 1.0;
        for (int l = 0; l < shape.parts(); ++l)
            if (l != j) coef *= factors[l](t[l]);
        A(f, t[j]) = coef;
    }
    return A;
}

// One restart of the alternating minimization.  Returns the final residual
// norm ||(I-P_S) kron(u)|| for unit factors.  The eigenvalue stream only
// drives the stopping rule; the returned residual is recomputed from the
// factors directly, which is accurate well below the eigensolver's floor.
inline double alternating_minimize(const Subspace& S, std::vector<VectorXcd>& factors,
                                   int max_iters) {
    const SystemShape& shape = S.shape();
    double prev = 1.0;
    for (int it = 0; it < max_iters; ++it) {
        double f_sq = prev;
        for (int j = 0; j < shape.parts(); ++j) {
            MatrixXcd A = mode_map(shape, factors, j);
            MatrixXcd C = S.basis().adjoint() * A;  // t x d_j
            // factors are unit vectors, so A^dagger A = I and the quadratic
            // form is I - C^dagger C
            MatrixXcd M = MatrixXcd::Identity(shape.dim(j), shape.dim(j)) - C.adjoint() * C;
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(M);
            factors[j] = es.eigenvectors().col(0);
            f_sq = std::max(0.0, es.eigenvalues()(0));
        }
        if (prev - f_sq < 1e-15) { prev = f_sq; break; }
        prev = f_sq;
    }
    TensorVector v = kron(shape, factors);
    return S.residual_norm(v) / v.norm();
}

// Levenberg-Marquardt refinement of a promising candidate.  The coordinate
// sweeps above stall in the flat valleys around rigid product rays (the
// objective can vanish to sixth order there), while damped Gauss-Newton on
// the holomorphic residual F(u) = Q^dagger kron(u) keeps a constant linear
// rate even at degenerate zeros.  Q spans the orthogonal complement of S.
inline double lm_polish(const MatrixXcd& Q, const SystemShape& shape,
                        std::vector<VectorXcd>& factors, int max_iters) {
    const int k = shape.parts();
    long n = 0;
    for (int j = 0; j < k; ++j) n += shape.dim(j);

    auto resid = [&](const std::vector<VectorXcd>& fs, VectorXcd& F) {
        TensorVector v = kron(shape, fs);
        F = Q.adjoint() * v.amp;
        return F.norm() / v.norm();
    };

    VectorXcd F;
    double best = resid(factors, F);
    double damping = 1e-3;
    for (int it = 0; it < max_iters && best > 1e-15; ++it) {
        MatrixXcd J(Q.cols(), n);
        long off = 0;
        for (int j = 0; j < k; ++j) {
            J.middleCols(off, shape.dim(j)) = Q.adjoint() * mode_map(shape, factors, j);
            off += shape.dim(j);
        }
        MatrixXcd H = J.adjoint() * J;
        VectorXcd g = J.adjoint() * F;
        bool improved = false;
        for (int attempt = 0; attempt < 8; ++attempt) {
            MatrixXcd Hd = H + damping * MatrixXcd::Identity(n, n);
            VectorXcd delta = Hd.ldlt().solve(-g);
            std::vector<VectorXcd> trial = factors;
            off = 0;
            for (int j = 0; j < k; ++j) {
                trial[j] += delta.segment(off, shape.dim(j));
                double fn = trial[j].norm();
                if (fn == 0) break;
                trial[j] /= fn;
                off += shape.dim(j);
            }
            VectorXcd Ft;
            double rt = resid(trial, Ft);
            if (rt < best) {
                factors = std::move(trial);
                F = std::move(Ft);
                best = rt;
                damping = std::max(damping / 3.0, 1e-12);
                improved = true;
                break;
            }
            damping *= 4.0;
        }
        if (!improved) break;
    }
    return best;
}

}  // namespace detail

inline EnumerationResult enumerate_products(const Subspace& S, const SearchConfig& cfg = {}) {
    cfg.validate();
    if (S.dim() < 1) throw std::invalid_argument("enumerate_products: empty subspace");
    const SystemShape& shape = S.shape();
    const Tolerances& tol = cfg.tol;

    EnumerationResult result;
    result.seed = cfg.seed;
    result.restarts_used = cfg.restarts;
    std::vector<int> first_seen;  // restart index that created each cluster
    const MatrixXcd Qperp = complement(S, tol).basis();

    for (int r = 0; r < cfg.restarts; ++r) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(r));
        std::vector<VectorXcd> factors;
        for (int j = 0; j < shape.parts(); ++j)
            factors.push_back(detail::random_unit_factor(shape.dim(j), rng));

        double residual = detail::alternating_minimize(S, factors, cfg.max_iters);
        if (residual < 1e-2 && residual >= tol.tol_zero)
            residual = detail::lm_polish(Qperp, shape, factors, 200);
        if (residual >= tol.tol_zero) continue;
        ++result.converged_restarts;

        ProductVector candidate = neat_form(ProductVector(shape, factors), tol);
        TensorVector ct = candidate.to_tensor();
        double membership = S.residual_norm(ct) / ct.norm();
        bool known = false;
        for (size_t i = 0; i < result.rays.size(); ++i) {
            TensorVector rt = result.rays[i].to_tensor();
            if (std::abs(inner(rt, ct)) >= (1.0 - cfg.ray_merge_tol) * rt.norm() * ct.norm()) {
                known = true;
                if (membership < result.residuals[i]) {
                    result.rays[i] = candidate;
                    result.residuals[i] = membership;
                }
                break;
            }
        }
        if (known) continue;

        result.rays.push_back(std::move(candidate));
        result.residuals.push_back(membership);
        first_seen.push_back(r);
    }

    // Tighten every representative, then drop stall artifacts: a candidate
    // that plateaued at a noticeably nonzero residual within a small angle
    // of an exactly converged ray is a leftover of that ray's flat valley,
    // not a ray of its own.
    for (size_t i = 0; i < result.rays.size(); ++i) {
        std::vector<VectorXcd> fs = result.rays[i].factors;
        double polished = detail::lm_polish(Qperp, shape, fs, 300);
        // Sparsification snap, validated by the residual: around rigid
        // basis-like rays the search stalls with small junk entries that
        // even the damped Newton steps cannot remove.
        std::vector<VectorXcd> snapped = fs;
        bool changed = false;
        for (auto& f : snapped) {
            const double cut = 1e-2 * f.cwiseAbs().maxCoeff();
            for (long t = 0; t < f.size(); ++t)
                if (f(t) != cd(0.0) && std::abs(f(t)) < cut) {
                    f(t) = 0.0;
                    changed = true;
                }
        }
        if (changed) {
            TensorVector sv = kron(shape, snapped);
            double snap_res = (Qperp.adjoint() * sv.amp).norm() / sv.norm();
            if (snap_res < polished) {
                fs = std::move(snapped);
                polished = detail::lm_polish(Qperp, shape, fs, 100);
            }
        }
        // Equalizing snap for the same reason: factor entries that agree to
        // within the stall radius are collapsed onto their mean, again kept
        // only when the membership residual strictly improves.
        snapped = fs;
        changed = false;
        for (auto& f : snapped) {
            const double close = 1e-2 * f.cwiseAbs().maxCoeff();
            for (long a = 0; a < f.size(); ++a)
                for (long b = a + 1; b < f.size(); ++b)
                    if (f(a) != f(b) && std::abs(f(a) - f(b)) < close) {
                        cd m = 0.5 * (f(a) + f(b));
                        f(a) = f(b) = m;
                        changed = true;
                    }
        }
        if (changed) {
            TensorVector sv = kron(shape, snapped);
            double snap_res = (Qperp.adjoint() * sv.amp).norm() / sv.norm();
            if (snap_res < polished) {
                fs = std::move(snapped);
                polished = snap_res;
            }
        }
        if (polished < result.residuals[i]) {
            result.rays[i] = neat_form(ProductVector(shape, std::move(fs)), tol);
            result.residuals[i] = polished;
        }
    }
    // Re-merge clusters that the tightening step pulled together, keeping
    // the earliest sighting for the saturation bookkeeping.
    for (size_t i = 0; i < result.rays.size(); ++i) {
        TensorVector vi = result.rays[i].to_tensor();
        for (size_t j = result.rays.size(); j-- > i + 1;) {
            TensorVector vj = result.rays[j].to_tensor();
            if (std::abs(inner(vi, vj)) >= (1.0 - cfg.ray_merge_tol) * vi.norm() * vj.norm()) {
                if (result.residuals[j] < result.residuals[i]) {
                    result.rays[i] = result.rays[j];
                    result.residuals[i] = result.residuals[j];
                    vi = result.rays[i].to_tensor();
                }
                first_seen[i] = std::min(first_seen[i], first_seen[j]);
                result.rays.erase(result.rays.begin() + static_cast<long>(j));
                result.residuals.erase(result.residuals.begin() + static_cast<long>(j));
                first_seen.erase(first_seen.begin() + static_cast<long>(j));
            }
        }
    }

    for (size_t i = 0; i < result.rays.size(); ++i) {
        if (result.residuals[i] >= 1e-12) continue;
        TensorVector exact = result.rays[i].to_tensor();
        for (size_t j = result.rays.size(); j-- > 0;) {
            if (j == i || result.residuals[j] < 1e-12) continue;
            TensorVector other = result.rays[j].to_tensor();
            if (std::abs(inner(exact, other)) >= 0.995 * exact.norm() * other.norm()) {
                result.rays.erase(result.rays.begin() + static_cast<long>(j));
                result.residuals.erase(result.residuals.begin() + static_cast<long>(j));
                first_seen.erase(first_seen.begin() + static_cast<long>(j));
                if (j < i) --i;
            }
        }
    }

    int last_new_ray_restart = -1;
    for (int r : first_seen) last_new_ray_restart = std::max(last_new_ray_restart, r);
    const bool saturated = last_new_ray_restart < cfg.restarts / 2;
    const bool below_threshold = static_cast<int>(result.rays.size()) < cfg.infinite_threshold;
    if (!(saturated && below_threshold)) {
        result.infinite = true;
        result.likely_infinite = true;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Closed-form solvers for the perturbed Parthasarathy spaces.

namespace detail {

// Applies the rescaling b_{jt} = lambda^t c_{jt} to a lambda=1 solution.
inline ProductVector rescale_solution(const ProductVector& p, cd lambda) {
    std::vector<VectorXcd> out = p.factors;
    for (auto& f : out) {
        cd pw = 1.0;
        for (long t = 0; t < f.size(); ++t) {
            f(t) *= pw;
            pw *= lambda;
        }
    }
    return ProductVector(p.shape, std::move(out));
}

inline EnumerationResult finite_result(const Subspace& S, std::vector<ProductVector> rays,
                                       const Tolerances& tol) {
    EnumerationResult res;
    for (auto& r : rays) {
        TensorVector t = r.to_tensor();
        res.residuals.push_back(S.residual_norm(t) / t.norm());
        res.rays.push_back(neat_form(r, tol));
    }
    return res;
}

}  // namespace detail

// All-qubit rigidity: on (2,...,2) the perturbation S_{P,1} contains no
// product ray beyond z_1 itself.
inline EnumerationResult solve_qubits_rigidity(int k, const Tolerances& tol = {}) {
    if (k < 2) throw std::invalid_argument("solve_qubits_rigidity: need k >= 2");
    SystemShape shape(std::vector<int>(k, 2));
    Subspace S = perturb(parthasarathy_space(shape, tol),
                         vdm_vector(shape, VdMParameter::finite(1.0)).to_tensor(), tol);
    return detail::finite_result(S, {vdm_vector(shape, VdMParameter::finite(1.0))}, tol);
}

// 2 (x) d law: S_{P,lambda} has product index d for d odd, d-1 for d even.
// The lambda=1 solutions are alpha_t = -exp(2 pi i t / d) with t != d/2 and
// c_r = (1/(1+alpha)) [2 + (-1)^r alpha^r (alpha - 1)]; general lambda by
// the rescaling b_{jt} = lambda^t c_{jt}.
inline EnumerationResult solve_2xd(int d, cd lambda, const Tolerances& tol = {}) {
    if (d < 3) throw std::invalid_argument("solve_2xd: need d >= 3");
    if (lambda == cd(0.0)) throw std::invalid_argument("solve_2xd: lambda must be nonzero");
    SystemShape shape({2, d});
    Subspace S = perturb(parthasarathy_space(shape, tol),
                         vdm_vector(shape, VdMParameter::finite(lambda)).to_tensor(), tol);

    std::vector<ProductVector> rays{vdm_vector(shape, VdMParameter::finite(lambda))};
    const double pi = std::acos(-1.0);
    for (int t = 1; t <= d - 1; ++t) {
        if (2 * t == d) continue;
        cd alpha = -std::exp(cd(0.0, 2.0 * pi * t / d));
        VectorXcd f1(2), f2(d);
        f1 << 1.0, alpha;
        f2(0) = 1.0;
        cd sign = -1.0, apow = alpha;
        for (int r = 1; r <= d - 1; ++r) {
            f2(r) = (2.0 + sign * apow * (alpha - 1.0)) / (1.0 + alpha);
            sign = -sign;
            apow *= alpha;
        }
        f2(d - 1) = 1.0 / alpha;
        rays.push_back(detail::rescale_solution(ProductVector(shape, {f1, f2}), lambda));
    }
    return detail::finite_result(S, std::move(rays), tol);
}

// 3 (x) 3 law: S_{P,lambda} has product index 3; the two extra rays at
// lambda=1 are built from the cube roots of unity.
inline EnumerationResult solve_3x3(cd lambda, const Tolerances& tol = {}) {
    if (lambda == cd(0.0)) throw std::invalid_argument("solve_3x3: lambda must be nonzero");
    SystemShape shape({3, 3});
    Subspace S = perturb(parthasarathy_space(shape, tol),
                         vdm_vector(shape, VdMParameter::finite(lambda)).to_tensor(), tol);

    const double pi = std::acos(-1.0);
    cd omega = std::exp(cd(0.0, 2.0 * pi / 3.0));
    cd omega2 = omega * omega;
    VectorXcd a(3), b(3);
    a << 1.0, -2.0 * omega2, omega;
    b << 1.0, -2.0 * omega, omega2;
    std::vector<ProductVector> rays{
        vdm_vector(shape, VdMParameter::finite(lambda)),
        detail::rescale_solution(ProductVector(shape, {a, b}), lambda),
        detail::rescale_solution(ProductVector(shape, {b, a}), lambda),
    };
    return detail::finite_result(S, std::move(rays), tol);
}

// Endpoint perturbations: S_{P,0} and S_{P,inf} keep exactly one product
// ray, the perturbing van der Monde vector itself.
inline EnumerationResult solve_sp_endpoints(const SystemShape& shape, const VdMParameter& which,
                                            const Tolerances& tol = {}) {
    if (!which.infinite && which.value != cd(0.0))
        throw std::invalid_argument("solve_sp_endpoints: parameter must be 0 or inf");
    Subspace S = perturb(parthasarathy_space(shape, tol), vdm_vector(shape, which).to_tensor(),
                         tol);
    return detail::finite_result(S, {vdm_vector(shape, which)}, tol);
}

// ---------------------------------------------------------------------------
// Infinite families in the doubly perturbed spaces.

enum class FamilyName {
    SU01,          // S_{U,0,1} on (3,3)
    SU04,          // S_{U,0,4} on (3,3)
    SV12,          // S_{V,1,2} on (2,2,2)
    SP_0INF,       // S_{P,0,inf} on (d,d)
    SP_1INF_3x3,   // S_{P,1,inf} on (3,3)
    SP_LM_3x3,     // S_{P,lambda,mu} on (3,3)
    SP_LM_QUBITS3  // S_{P,lambda,mu} on (2,2,2)
};

struct Family {
    FamilyName name;
    int d = 3;         // local dimension for SP_0INF
    cd lambda{1.0};    // binding for the SP_LM families
    cd mu{2.0};
};

namespace detail {

// Principal square root, argument in (-pi, pi].
inline cd principal_sqrt(cd z) { return std::sqrt(z); }

// Roots of a monic polynomial via companion-matrix eigenvalues.
// `coeffs` are c_0..c_{n-1} of x^n + c_{n-1} x^{n-1} + ... + c_0.
inline std::vector<cd> companion_roots(const std::vector<cd>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    MatrixXcd C = MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i];
    Eigen::ComplexEigenSolver<MatrixXcd> es(C);
    std::vector<cd> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(roots.begin(), roots.end(), [](cd x, cd y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

inline void reject_parameter(const std::string& family, const std::string& why) {
    throw std::invalid_argument("family " + family + ": parameter excluded (" + why + ")");
}

struct SpLmScalars {
    cd A;   // (1 + beta alpha^4) / (1 + beta)
    cd B;   // 2 (1 + beta alpha) / (1 + beta)
    cd C3;  // (1 + beta alpha^3) / (1 + beta alpha)
    cd E;   // 3 (1 + beta alpha^2) / (1 + beta)
};

inline SpLmScalars sp_lm_scalars(cd alpha, cd beta) {
    cd one_b = 1.0 + beta;
    return {(1.0 + beta * alpha * alpha * alpha * alpha) / one_b,
            2.0 * (1.0 + beta * alpha) / one_b,
            (1.0 + beta * alpha * alpha * alpha) / (1.0 + beta * alpha),
            3.0 * (1.0 + beta * alpha * alpha) / one_b};
}

inline void check_sp_lm_exclusions(cd alpha, cd beta, int max_power, double tol_eq,
                                   const std::string& family) {
    if (std::abs(beta) < tol_eq) reject_parameter(family, "beta = 0");
    if (std::abs(beta + 1.0) < tol_eq) reject_parameter(family, "beta = -1");
    cd apow = alpha;
    for (int s = 1; s <= max_power; ++s) {
        if (std::abs(1.0 + beta * apow) < tol_eq)
            reject_parameter(family, "1 + beta alpha^" + std::to_string(s) + " = 0");
        apow *= alpha;
    }
}

// The degree-6 polynomial q(x) = v(x)^2 p(x) / (1+beta) whose roots give the
// admissible values of b_2; monic with constant term A^3.
inline std::vector<cd> sp_lm_3x3_poly(cd alpha, cd beta) {
    SpLmScalars s = sp_lm_scalars(alpha, beta);
    // q = (x^2 + A)(x^2 - A)^2 + B x^2 (x^2 - A) r(x) - x^3 r(x)^2 - E x (x^2 - A)^2
    // with r(x) = B (x - C3); collect coefficients by hand.
    std::vector<cd> q(7, cd(0.0));
    auto add = [&](int pw, cd c) { q[pw] += c; };
    const cd A = s.A, B = s.B, C3 = s.C3, E = s.E;
    // (x^2 + A)(x^2 - A)^2 = x^6 - A x^4 - A^2 x^2 + A^3
    add(6, 1.0); add(4, -A); add(2, -A * A); add(0, A * A * A);
    // B x^2 (x^2 - A) * B (x - C3) = B^2 (x^5 - C3 x^4 - A x^3 + A C3 x^2)
    add(5, B * B); add(4, -B * B * C3); add(3, -B * B * A); add(2, B * B * A * C3);
    // - x^3 B^2 (x - C3)^2 = -B^2 (x^5 - 2 C3 x^4 + C3^2 x^3)
    add(5, -B * B); add(4, 2.0 * B * B * C3); add(3, -B * B * C3 * C3);
    // - E x (x^2 - A)^2 = -E (x^5 - 2A x^3 + A^2 x)
    add(5, -E); add(3, 2.0 * E * A); add(1, -E * A * A);
    return {q[0], q[1], q[2], q[3], q[4], q[5]};  // monic degree 6
}

}  // namespace detail

inline SystemShape family_shape(const Family& fam) {
    switch (fam.name) {
        case FamilyName::SU01:
        case FamilyName::SU04:
        case FamilyName::SP_1INF_3x3:
        case FamilyName::SP_LM_3x3:
            return SystemShape({3, 3});
        case FamilyName::SV12:
        case FamilyName::SP_LM_QUBITS3:
            return SystemShape({2, 2, 2});
        case FamilyName::SP_0INF:
            return SystemShape({fam.d, fam.d});
    }
    throw std::logic_error("unreachable");
}

// The doubly perturbed subspace each family lives in.
inline Subspace family_space(const Family& fam, const Tolerances& tol = {}) {
    SystemShape shape = family_shape(fam);
    switch (fam.name) {
        case FamilyName::SU01:
            return named_space(parse_named_space("SU+0+1"), tol);
        case FamilyName::SU04:
            return named_space(parse_named_space("SU+0+4"), tol);
        case FamilyName::SV12:
            return named_space(parse_named_space("SV+1+2"), tol);
        case FamilyName::SP_0INF:
            return perturb(parthasarathy_space(shape, tol),
                           {vdm_vector(shape, VdMParameter::finite(0.0)).to_tensor(),
                            vdm_vector(shape, VdMParameter::inf()).to_tensor()},
                           tol);
        case FamilyName::SP_1INF_3x3:
            return perturb(parthasarathy_space(shape, tol),
                           {vdm_vector(shape, VdMParameter::finite(1.0)).to_tensor(),
                            vdm_vector(shape, VdMParameter::inf()).to_tensor()},
                           tol);
        case FamilyName::SP_LM_3x3:
        case FamilyName::SP_LM_QUBITS3:
            return perturb(parthasarathy_space(shape, tol),
                           {vdm_vector(shape, VdMParameter::finite(fam.lambda)).to_tensor(),
                            vdm_vector(shape, VdMParameter::finite(fam.mu)).to_tensor()},
                           tol);
    }
    throw std::logic_error("unreachable");
}

// One family member at the given parameter; guaranteed to lie in
// family_space(fam).  Excluded parameters raise invalid_argument naming the
// violated exclusion.
inline ProductVector family(const Family& fam, cd parameter, const Tolerances& tol = {}) {
    SystemShape shape = family_shape(fam);
    const double eps = tol.tol_eq;
    switch (fam.name) {
        case FamilyName::SU01: {
            // 2 (1 - (t+1) X + t X^2) Y
            cd t = parameter;
            VectorXcd f1(3), f2(3);
            f1 << 1.0, -(t + 1.0), t;
            f2 << 0.0, 2.0, 0.0;
            return ProductVector(shape, {f1, f2});
        }
        case FamilyName::SU04: {
            // |0> (x) (|0> + t |1>)
            VectorXcd f1(3), f2(3);
            f1 << 1.0, 0.0, 0.0;
            f2 << 1.0, parameter, 0.0;
            return ProductVector(shape, {f1, f2});
        }
        case FamilyName::SV12: {
            cd beta = parameter;
            if (std::abs(beta) < eps) detail::reject_parameter("SV12", "beta = 0");
            if (std::abs(beta - 1.0) < eps) detail::reject_parameter("SV12", "beta = 1");
            VectorXcd f1(2), f2(2), f3(2);
            f1 << 1.0, 1.0;
            f2 << beta - 1.0, 1.0;
            f3 << 1.0, 0.0;
            return ProductVector(shape, {f1, f2, f3});
        }
        case FamilyName::SP_0INF: {
            // (|0> + a |d-1>) (x) (|0> - a |d-1>)
            cd a = parameter;
            VectorXcd f1 = VectorXcd::Zero(fam.d), f2 = VectorXcd::Zero(fam.d);
            f1(0) = 1.0;
            f1(fam.d - 1) = a;
            f2(0) = 1.0;
            f2(fam.d - 1) = -a;
            return ProductVector(shape, {f1, f2});
        }
        case FamilyName::SP_1INF_3x3: {
            cd alpha = parameter;
            if (std::abs(alpha.imag()) > eps || alpha.real() <= eps || alpha.real() >= 1.0 - eps)
                detail::reject_parameter("SP_1INF_3x3", "alpha must lie in the open interval (0,1)");
            cd q = 1.0 + detail::principal_sqrt(1.0 - alpha);
            VectorXcd f1(3), f2(3);
            f1 << 1.0, 1.0, q;
            f2 << 1.0, 1.0, alpha / q;
            return ProductVector(shape, {f1, f2});
        }
        case FamilyName::SP_LM_3x3: {
            cd beta = parameter;
            cd alpha = fam.mu / fam.lambda;
            detail::check_sp_lm_exclusions(alpha, beta, 4, eps, "SP_LM_3x3");
            detail::SpLmScalars s = detail::sp_lm_scalars(alpha, beta);
            VectorXcd f1(3), f2(3);
            if (std::abs(alpha + 1.0) < eps) {
                // alpha = -1 closed form: b_2 = c_2 = 1
                if (std::abs(beta - 1.0) < eps)
                    detail::reject_parameter("SP_LM_3x3", "beta = 1 at alpha = -1");
                cd u = (1.0 - beta + 2.0 * detail::principal_sqrt(-beta)) / (1.0 + beta);
                f1 << 1.0, u, 1.0;
                f2 << 1.0, s.B - u, 1.0;
            } else {
                // discard the finitely many beta thrown out in the proof
                cd disc1 = (1.0 + beta * alpha * alpha * alpha * alpha) + s.C3 * s.C3 * (1.0 + beta) -
                           3.0 * s.C3 * (1.0 + beta * alpha * alpha);
                if (std::abs(disc1) < eps)
                    detail::reject_parameter("SP_LM_3x3", "beta on the u = 0 discarded curve");
                if (std::abs(beta * alpha * alpha - 1.0) < eps)
                    detail::reject_parameter("SP_LM_3x3", "beta alpha^2 = 1");
                cd disc2 = (1.0 + beta * alpha * alpha * alpha * alpha) * (1.0 + beta * alpha) * (1.0 + beta * alpha) +
                           (1.0 + beta * alpha * alpha * alpha) * (1.0 + beta * alpha * alpha * alpha) * (1.0 + beta) -
                           3.0 * (1.0 + beta * alpha * alpha * alpha) * (1.0 + beta * alpha * alpha) * (1.0 + beta * alpha);
                if (std::abs(disc2) < eps)
                    detail::reject_parameter("SP_LM_3x3", "beta on the q(C3) = 0 discarded curve");

                auto roots = detail::companion_roots(detail::sp_lm_3x3_poly(alpha, beta));
                bool found = false;
                for (cd delta : roots) {
                    if (std::abs(delta) < eps) continue;
                    cd v = delta * delta - s.A;
                    if (std::abs(v) < eps) continue;
                    cd u = s.B * (delta - s.C3) / v;
                    if (std::abs(u) < eps) continue;
                    f1 << 1.0, u * delta, delta;
                    f2 << 1.0, s.B - u * delta, s.A / delta;
                    found = true;
                    break;
                }
                if (!found)
                    detail::reject_parameter("SP_LM_3x3", "no admissible root at this beta");
            }
            return detail::rescale_solution(ProductVector(shape, {f1, f2}), fam.lambda);
        }
        case FamilyName::SP_LM_QUBITS3: {
            cd beta = parameter;
            cd alpha = fam.mu / fam.lambda;
            detail::check_sp_lm_exclusions(alpha, beta, 3, eps, "SP_LM_QUBITS3");
            cd one_b = 1.0 + beta;
            // z^3 - 3((1+ba)/(1+b)) z^2 + 3((1+ba^2)/(1+b)) z - (1+ba^3)/(1+b)
            std::vector<cd> coeffs = {-(1.0 + beta * alpha * alpha * alpha) / one_b,
                                      3.0 * (1.0 + beta * alpha * alpha) / one_b,
                                      -3.0 * (1.0 + beta * alpha) / one_b};
            auto roots = detail::companion_roots(coeffs);
            std::vector<VectorXcd> factors;
            for (int j = 0; j < 3; ++j) {
                VectorXcd f(2);
                f << 1.0, roots[j];
                factors.push_back(f);
            }
            return detail::rescale_solution(ProductVector(shape, factors), fam.lambda);
        }
    }
    throw std::logic_error("unreachable");
}

// Distinct admissible parameters for a family, dense enough for sampling.
// Default grid is 1 + j/samples, extended past excluded points; families
// whose admissible set is an interval use a grid inside it.
inline std::vector<cd> family_parameter_grid(const Family& fam, int samples,
                                             const Tolerances& tol = {}) {
    std::vector<cd> params;
    if (fam.name == FamilyName::SP_1INF_3x3) {
        for (int j = 1; params.size() < static_cast<size_t>(samples); ++j)
            params.emplace_back(static_cast<double>(j) / (samples + 1), 0.0);
        return params;
    }
    for (int j = 0; params.size() < static_cast<size_t>(samples) && j < 100 * samples; ++j) {
        cd p(1.0 + static_cast<double>(j) / samples, 0.0);
        try {
            family(fam, p, tol);
        } catch (const std::invalid_argument&) {
            continue;  // excluded point, skip
        }
        params.push_back(p);
    }
    return params;
}

// Deterministic infinity certificate: `samples` family members at distinct
// parameters, pairwise ray-distinct and all inside S.
inline EnumerationResult certify_infinite(const Subspace& S, const Family& fam, int samples,
                                          const Tolerances& tol = {}) {
    if (samples < 2) throw std::invalid_argument("certify_infinite: need samples >= 2");
    EnumerationResult res;
    res.infinite = true;
    for (cd p : family_parameter_grid(fam, samples, tol)) {
        ProductVector member = neat_form(family(fam, p, tol), tol);
        TensorVector t = member.to_tensor();
        double residual = S.residual_norm(t) / t.norm();
        if (residual >= tol.tol_zero)
            throw std::logic_error("certify_infinite: family member left the subspace "
                                   "(internal inconsistency)");
        for (const auto& prev : res.family_samples)
            if (ray_equal(prev.to_tensor(), t, tol))
                throw std::logic_error("certify_infinite: duplicate family member "
                                       "(internal inconsistency)");
        res.residuals.push_back(residual);
        res.family_samples.push_back(std::move(member));
    }
    return res;
}

}  // namespace ces
