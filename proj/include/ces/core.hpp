#pragma once

// Multipartite index bookkeeping and dense tensor-vector arithmetic.
//
// A state lives in C^{d_1} x ... x C^{d_k}; amplitudes are stored in
// lexicographic order of the index tuples (i_1..i_k), i.e. row-major with
// the last part varying fastest.

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ces {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

struct Tolerances {
    double tol_rank = 1e-9;  // relative second-singular-value threshold
    double tol_zero = 1e-8;  // residual-norm threshold for membership
    double tol_eq = 1e-7;    // ray-equality threshold
    double tol_eig = 1e-10;  // PPT eigenvalue slack

    void validate() const {
        if (tol_rank <= 0 || tol_zero <= 0 || tol_eq <= 0 || tol_eig <= 0)
            throw std::invalid_argument("tolerances must be strictly positive");
        if (tol_rank >= 1)
            throw std::invalid_argument("tol_rank must be < 1");
    }
};

using IndexTuple = std::vector<int>;

inline int tuple_level(const IndexTuple& i) {
    return std::accumulate(i.begin(), i.end(), 0);
}

// Dimension profile (d_1..d_k) with the derived quantities used throughout:
// D = prod d_j, N = sum d_j - k + 1, N' = N - 1.
class SystemShape {
  public:
    explicit SystemShape(std::vector<int> dims) : dims_(std::move(dims)) {
        if (dims_.empty())
            throw std::invalid_argument("SystemShape: need at least one part");
        for (int d : dims_)
            if (d < 1)
                throw std::invalid_argument("SystemShape: dimensions must be >= 1");
        strides_.assign(dims_.size(), 1);
        for (int j = static_cast<int>(dims_.size()) - 2; j >= 0; --j)
            strides_[j] = strides_[j + 1] * dims_[j + 1];
    }

    const std::vector<int>& dims() const { return dims_; }
    int dim(int j) const { return dims_[j]; }
    int parts() const { return static_cast<int>(dims_.size()); }
    long total_dim() const {
        long D = 1;
        for (int d : dims_) D *= d;
        return D;
    }
    int N() const {
        int s = 0;
        for (int d : dims_) s += d - 1;
        return s + 1;
    }
    int Nprime() const { return N() - 1; }

    bool operator==(const SystemShape& o) const { return dims_ == o.dims_; }
    bool operator!=(const SystemShape& o) const { return !(*this == o); }

    long flat_index(const IndexTuple& i) const {
        long f = 0;
        for (int j = 0; j < parts(); ++j) {
            if (i[j] < 0 || i[j] >= dims_[j])
                throw std::out_of_range("index tuple entry out of bounds");
            f += static_cast<long>(i[j]) * strides_[j];
        }
        return f;
    }

    IndexTuple tuple_of(long flat) const {
        IndexTuple i(parts());
        for (int j = 0; j < parts(); ++j) {
            i[j] = static_cast<int>(flat / strides_[j]);
            flat %= strides_[j];
        }
        return i;
    }

    // All parts at least `min_dim`; used by the constructions that demand
    // genuine entanglement (k >= 2 and every d_j >= 2).
    bool all_parts_at_least(int min_dim) const {
        for (int d : dims_)
            if (d < min_dim) return false;
        return true;
    }

  private:
    std::vector<int> dims_;
    std::vector<long> strides_;
};

// All index tuples with |i| = n, in lexicographic order.
inline std::vector<IndexTuple> enumerate_level(const SystemShape& shape, int n) {
    if (n < 0 || n > shape.Nprime())
        throw std::out_of_range("enumerate_level: level out of range [0, N']");
    std::vector<IndexTuple> out;
    IndexTuple cur(shape.parts(), 0);
    // depth-first over parts, keeping the running sum
    auto rec = [&](auto&& self, int j, int remaining) -> void {
        if (j == shape.parts() - 1) {
            if (remaining < shape.dim(j)) {
                cur[j] = remaining;
                out.push_back(cur);
            }
            return;
        }
        int hi = std::min(remaining, shape.dim(j) - 1);
        for (int v = 0; v <= hi; ++v) {
            cur[j] = v;
            self(self, j + 1, remaining - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

// Dense complex amplitude vector over the basis tuples of `shape`.
struct TensorVector {
    SystemShape shape;
    VectorXcd amp;

    TensorVector(SystemShape s, VectorXcd a) : shape(std::move(s)), amp(std::move(a)) {
        if (amp.size() != shape.total_dim())
            throw std::invalid_argument("TensorVector: amplitude count must equal D");
    }

    static TensorVector zero(const SystemShape& s) {
        return TensorVector(s, VectorXcd::Zero(s.total_dim()));
    }

    static TensorVector basis(const SystemShape& s, const IndexTuple& i) {
        TensorVector v = zero(s);
        v.amp(s.flat_index(i)) = 1.0;
        return v;
    }

    cd& at(const IndexTuple& i) { return amp(shape.flat_index(i)); }
    cd at(const IndexTuple& i) const { return amp(shape.flat_index(i)); }

    double norm() const { return amp.norm(); }

    TensorVector normalized() const {
        double n = norm();
        if (n == 0) throw std::invalid_argument("cannot normalize the zero vector");
        return TensorVector(shape, amp / n);
    }
};

// Hermitian inner product, conjugate-linear in the first argument.
inline cd inner(const TensorVector& v, const TensorVector& w) {
    if (v.shape != w.shape)
        throw std::invalid_argument("inner: shape mismatch");
    return v.amp.dot(w.amp);
}

// Tensor product of k local coefficient vectors; amplitude at tuple i is
// the product of the factor entries.  Lexicographic storage makes this the
// plain Kronecker product taken left to right.
inline TensorVector kron(const SystemShape& shape, const std::vector<VectorXcd>& factors) {
    if (static_cast<int>(factors.size()) != shape.parts())
        throw std::invalid_argument("kron: need one factor per part");
    for (int j = 0; j < shape.parts(); ++j)
        if (factors[j].size() != shape.dim(j))
            throw std::invalid_argument("kron: factor " + std::to_string(j + 1) +
                                        " has wrong length");
    VectorXcd acc = factors[0];
    for (int j = 1; j < shape.parts(); ++j) {
        VectorXcd next(acc.size() * factors[j].size());
        for (long a = 0; a < acc.size(); ++a)
            next.segment(a * factors[j].size(), factors[j].size()) = acc(a) * factors[j];
        acc = std::move(next);
    }
    return TensorVector(shape, std::move(acc));
}

}  // namespace ces
