#pragma once

// Product-vector detection and canonicalization: mode unfoldings, rank-1
// tests, factor extraction, neat form, and ray comparison.

#include "ces/core.hpp"

#include <optional>

namespace ces {

// A rank-1 tensor given by its k local factors.
struct ProductVector {
    SystemShape shape;
    std::vector<VectorXcd> factors;

    ProductVector(SystemShape s, std::vector<VectorXcd> f)
        : shape(std::move(s)), factors(std::move(f)) {
        if (static_cast<int>(factors.size()) != shape.parts())
            throw std::invalid_argument("ProductVector: need one factor per part");
        for (int j = 0; j < shape.parts(); ++j) {
            if (factors[j].size() != shape.dim(j))
                throw std::invalid_argument("ProductVector: factor length mismatch");
            if (factors[j].norm() == 0)
                throw std::invalid_argument("ProductVector: zero factor");
        }
    }

    TensorVector to_tensor() const { return kron(shape, factors); }
};

// Mode-j unfolding: d_j x (D/d_j) matrix, rows indexed by i_j, columns by
// the remaining tuple in lexicographic order.
inline MatrixXcd mode_unfolding(const TensorVector& v, int j) {
    const SystemShape& s = v.shape;
    const long D = s.total_dim();
    MatrixXcd M(s.dim(j), D / s.dim(j));
    std::vector<long> col_counter(s.dim(j), 0);
    for (long f = 0; f < D; ++f) {
        IndexTuple t = s.tuple_of(f);
        M(t[j], col_counter[t[j]]++) = v.amp(f);
    }
    return M;
}

// Unfolding across a bipartite cut: rows indexed by the parts in `cut`
// (lexicographic), columns by the rest.
inline MatrixXcd cut_unfolding(const TensorVector& v, const std::vector<int>& cut) {
    const SystemShape& s = v.shape;
    std::vector<bool> in_cut(s.parts(), false);
    for (int p : cut) {
        if (p < 0 || p >= s.parts()) throw std::out_of_range("cut_unfolding: bad part index");
        in_cut[p] = true;
    }
    long rows = 1, cols = 1;
    for (int j = 0; j < s.parts(); ++j) (in_cut[j] ? rows : cols) *= s.dim(j);
    MatrixXcd M(rows, cols);
    for (long f = 0; f < s.total_dim(); ++f) {
        IndexTuple t = s.tuple_of(f);
        long r = 0, c = 0;
        for (int j = 0; j < s.parts(); ++j) {
            if (in_cut[j])
                r = r * s.dim(j) + t[j];
            else
                c = c * s.dim(j) + t[j];
        }
        M(r, c) = v.amp(f);
    }
    return M;
}

// True iff v factorizes across the given bipartite cut (rank-1 unfolding).
inline bool is_product_across_cut(const TensorVector& v, const std::vector<int>& cut,
                                  const Tolerances& tol = {}) {
    if (v.norm() == 0) throw std::invalid_argument("is_product_across_cut: zero vector");
    Eigen::JacobiSVD<MatrixXcd> svd(cut_unfolding(v, cut));
    const auto& sv = svd.singularValues();
    if (sv.size() < 2) return true;
    return sv(1) / sv(0) < tol.tol_rank;
}

// Full product test: every mode unfolding must be numerically rank 1.  On
// success returns the factors (leading left singular vectors, with the
// global scalar folded into the first factor so kron reconstructs v).
inline std::optional<ProductVector> is_product(const TensorVector& v, const Tolerances& tol = {}) {
    const double vn = v.norm();
    if (vn == 0) throw std::invalid_argument("is_product: zero vector");
    std::vector<VectorXcd> factors;
    factors.reserve(v.shape.parts());
    for (int j = 0; j < v.shape.parts(); ++j) {
        Eigen::JacobiSVD<MatrixXcd> svd(mode_unfolding(v, j), Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        if (sv.size() >= 2 && sv(1) / sv(0) >= tol.tol_rank) return std::nullopt;
        factors.push_back(svd.matrixU().col(0));
    }
    TensorVector w = kron(v.shape, factors);
    cd scale = inner(w, v) / inner(w, w);
    factors[0] *= scale;
    TensorVector rebuilt = kron(v.shape, factors);
    if ((rebuilt.amp - v.amp).norm() / vn >= tol.tol_zero) return std::nullopt;
    return ProductVector(v.shape, std::move(factors));
}

// Canonical ray representative: each factor is divided by its lowest-index
// nonzero coefficient, which becomes exactly 1.  Coefficients of modulus
// below tol_eq times the factor max are treated as exact zeros first.
inline ProductVector neat_form(const ProductVector& p, const Tolerances& tol = {}) {
    std::vector<VectorXcd> out = p.factors;
    for (auto& f : out) {
        const double cut = tol.tol_eq * f.cwiseAbs().maxCoeff();
        long m = 0;
        while (m < f.size() && std::abs(f(m)) <= cut) ++m;
        cd lead = f(m);
        f /= lead;
        for (long t = 0; t < m; ++t) f(t) = 0.0;
        f(m) = 1.0;
    }
    return ProductVector(p.shape, std::move(out));
}

// Rays are equal when the vectors are parallel up to tolerance.
inline bool ray_equal(const TensorVector& v, const TensorVector& w, const Tolerances& tol = {}) {
    const double nv = v.norm(), nw = w.norm();
    if (nv == 0 || nw == 0) throw std::invalid_argument("ray_equal: zero vector");
    return std::abs(inner(v, w)) >= (1.0 - tol.tol_eq) * nv * nw;
}

inline bool ray_equal(const ProductVector& p, const ProductVector& q, const Tolerances& tol = {}) {
    return ray_equal(p.to_tensor(), q.to_tensor(), tol);
}

}  // namespace ces
