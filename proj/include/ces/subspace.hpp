#pragma once

// Linear-subspace algebra over tensor vectors: spans, orthogonal
// complements, membership, perturbation by extra vectors, and comparison.

#include "ces/core.hpp"

namespace ces {

class Subspace {
  public:
    // basis: D x t matrix with orthonormal columns (t may be 0).
    Subspace(SystemShape shape, MatrixXcd basis)
        : shape_(std::move(shape)), basis_(std::move(basis)) {
        if (basis_.rows() != shape_.total_dim())
            throw std::invalid_argument("Subspace: basis rows must equal D");
    }

    const SystemShape& shape() const { return shape_; }
    const MatrixXcd& basis() const { return basis_; }
    int dim() const { return static_cast<int>(basis_.cols()); }

    TensorVector basis_vector(int i) const { return TensorVector(shape_, basis_.col(i)); }

    // Orthogonal projection of v onto the subspace.
    VectorXcd project(const VectorXcd& v) const { return basis_ * (basis_.adjoint() * v); }

    double residual_norm(const TensorVector& v) const {
        if (v.shape != shape_) throw std::invalid_argument("residual_norm: shape mismatch");
        return (v.amp - project(v.amp)).norm();
    }

  private:
    SystemShape shape_;
    MatrixXcd basis_;
};

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization pass.  Columns whose
// residual falls below tol_zero times their input norm are dropped as
// dependent.  Starts from `seed` orthonormal columns which are kept as-is.
inline MatrixXcd orthonormalize(const MatrixXcd& seed, const MatrixXcd& extra, double tol_zero) {
    const long D = seed.rows() ? seed.rows() : extra.rows();
    MatrixXcd out(D, seed.cols() + extra.cols());
    long t = seed.cols();
    out.leftCols(t) = seed;
    for (long c = 0; c < extra.cols(); ++c) {
        VectorXcd v = extra.col(c);
        const double in_norm = v.norm();
        if (in_norm == 0) continue;
        for (int pass = 0; pass < 2; ++pass)
            for (long b = 0; b < t; ++b)
                v -= out.col(b).dot(v) * out.col(b);
        if (v.norm() < tol_zero * in_norm) continue;
        out.col(t++) = v / v.norm();
    }
    return out.leftCols(t);
}

}  // namespace detail

inline Subspace span(const std::vector<TensorVector>& vectors, const Tolerances& tol = {}) {
    if (vectors.empty())
        throw std::invalid_argument("span: empty vector list");
    const SystemShape& shape = vectors.front().shape;
    MatrixXcd cols(shape.total_dim(), vectors.size());
    for (size_t c = 0; c < vectors.size(); ++c) {
        if (vectors[c].shape != shape)
            throw std::invalid_argument("span: mixed shapes");
        cols.col(c) = vectors[c].amp;
    }
    MatrixXcd seed(shape.total_dim(), 0);
    return Subspace(shape, detail::orthonormalize(seed, cols, tol.tol_zero));
}

inline Subspace complement(const Subspace& S, const Tolerances& tol = {}) {
    const long D = S.shape().total_dim();
    // project the standard basis out of S and orthonormalize the remainder
    MatrixXcd id = MatrixXcd::Identity(D, D);
    MatrixXcd rest = detail::orthonormalize(S.basis(), id, tol.tol_zero);
    return Subspace(S.shape(), rest.rightCols(rest.cols() - S.dim()));
}

inline bool contains(const Subspace& S, const TensorVector& v, const Tolerances& tol = {}) {
    double n = v.norm();
    if (n == 0) throw std::invalid_argument("contains: zero vector");
    return S.residual_norm(v) / n < tol.tol_zero;
}

inline Subspace perturb(const Subspace& S, const std::vector<TensorVector>& extras,
                        const Tolerances& tol = {}) {
    MatrixXcd cols(S.shape().total_dim(), extras.size());
    for (size_t c = 0; c < extras.size(); ++c) {
        if (extras[c].shape != S.shape())
            throw std::invalid_argument("perturb: shape mismatch");
        cols.col(c) = extras[c].amp;
    }
    return Subspace(S.shape(), detail::orthonormalize(S.basis(), cols, tol.tol_zero));
}

inline Subspace perturb(const Subspace& S, const TensorVector& extra, const Tolerances& tol = {}) {
    return perturb(S, std::vector<TensorVector>{extra}, tol);
}

inline bool subspace_equal(const Subspace& S1, const Subspace& S2, const Tolerances& tol = {}) {
    if (S1.shape() != S2.shape())
        throw std::invalid_argument("subspace_equal: shape mismatch");
    if (S1.dim() != S2.dim()) return false;
    for (int i = 0; i < S1.dim(); ++i)
        if (!contains(S2, S1.basis_vector(i), tol)) return false;
    for (int i = 0; i < S2.dim(); ++i)
        if (!contains(S1, S2.basis_vector(i), tol)) return false;
    return true;
}

}  // namespace ces
