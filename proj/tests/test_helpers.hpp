#pragma once

// Shared test utilities, including independent oracles kept deliberately
// separate from the library's own linear algebra paths.

#include "ces/core.hpp"

#include <random>

namespace ces::testing {

// Independent rank oracle: plain Gaussian elimination with partial
// pivoting, no reuse of the library's Gram-Schmidt.
inline int row_reduction_rank(MatrixXcd m, double tol = 1e-10) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0) return 0;
    int rank = 0;
    long row = 0;
    for (long col = 0; col < m.cols() && row < m.rows(); ++col) {
        long piv = row;
        for (long r = row + 1; r < m.rows(); ++r)
            if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
        if (std::abs(m(piv, col)) < tol * scale) continue;
        m.row(row).swap(m.row(piv));
        for (long r = row + 1; r < m.rows(); ++r)
            m.row(r) -= (m(r, col) / m(row, col)) * m.row(row);
        ++row;
        ++rank;
    }
    return rank;
}

inline int row_reduction_rank(const std::vector<TensorVector>& vs, double tol = 1e-10) {
    MatrixXcd m(vs.size(), vs.front().shape.total_dim());
    for (size_t r = 0; r < vs.size(); ++r) m.row(r) = vs[r].amp.transpose();
    return row_reduction_rank(std::move(m), tol);
}

inline TensorVector random_tensor(const SystemShape& shape, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    VectorXcd amp(shape.total_dim());
    for (long f = 0; f < amp.size(); ++f) amp(f) = cd(g(rng), g(rng));
    return TensorVector(shape, std::move(amp));
}

inline VectorXcd random_factor(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    VectorXcd f(d);
    for (int t = 0; t < d; ++t) f(t) = cd(g(rng), g(rng));
    return f;
}

inline VectorXcd vec3(cd a, cd b, cd c) {
    VectorXcd v(3);
    v << a, b, c;
    return v;
}

inline VectorXcd vec2(cd a, cd b) {
    VectorXcd v(2);
    v << a, b;
    return v;
}

}  // namespace ces::testing
