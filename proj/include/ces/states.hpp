#pragma once

// Density operators and entanglement certification: the UPB-complement
// state, partial transpose over arbitrary part subsets, the PPT check
// across every inequivalent bipartition, and the range criterion.

#include "ces/enumerate.hpp"

namespace ces {

struct DensityOperator {
    SystemShape shape;
    MatrixXcd matrix;  // D x D, Hermitian, trace 1

    DensityOperator(SystemShape s, MatrixXcd m) : shape(std::move(s)), matrix(std::move(m)) {
        const long D = shape.total_dim();
        if (matrix.rows() != D || matrix.cols() != D)
            throw std::invalid_argument("DensityOperator: matrix must be D x D");
    }

    void validate(const Tolerances& tol = {}) const {
        if ((matrix - matrix.adjoint()).norm() > tol.tol_eq)
            throw std::invalid_argument("DensityOperator: not Hermitian");
        if (std::abs(matrix.trace().real() - 1.0) > tol.tol_eq ||
            std::abs(matrix.trace().imag()) > tol.tol_eq)
            throw std::invalid_argument("DensityOperator: trace must be 1");
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) < -tol.tol_eig)
            throw std::invalid_argument("DensityOperator: negative eigenvalue");
    }
};

// The normalized projector onto the orthogonal complement of a UPB span:
// rho = (I - sum |psi><psi|) / (D - d).
inline DensityOperator upb_complement_state(const std::vector<ProductVector>& upb,
                                            const Tolerances& tol = {}) {
    if (upb.empty()) throw std::invalid_argument("upb_complement_state: empty UPB");
    const SystemShape shape = upb.front().shape;
    const long D = shape.total_dim();
    const long d = static_cast<long>(upb.size());
    if (d >= D) throw std::invalid_argument("upb_complement_state: need d < D");

    std::vector<TensorVector> vs;
    for (const auto& p : upb) vs.push_back(p.to_tensor());
    for (size_t a = 0; a < vs.size(); ++a)
        for (size_t b = 0; b < vs.size(); ++b) {
            cd ip = inner(vs[a], vs[b]);
            if (std::abs(ip - (a == b ? cd(1.0) : cd(0.0))) > tol.tol_eq)
                throw std::invalid_argument("upb_complement_state: input not orthonormal");
        }

    MatrixXcd P = MatrixXcd::Zero(D, D);
    for (const auto& v : vs) P += v.amp * v.amp.adjoint();
    return DensityOperator(shape, (MatrixXcd::Identity(D, D) - P) / static_cast<double>(D - d));
}

// Partial transpose over the given (0-based) parts; result is Hermitian for
// Hermitian input.
inline MatrixXcd partial_transpose(const DensityOperator& rho, const std::vector<int>& parts) {
    const SystemShape& s = rho.shape;
    if (parts.empty() || static_cast<int>(parts.size()) >= s.parts())
        throw std::invalid_argument("partial_transpose: parts must be a nonempty proper subset");
    std::vector<bool> flip(s.parts(), false);
    for (int p : parts) {
        if (p < 0 || p >= s.parts())
            throw std::out_of_range("partial_transpose: part index out of range");
        flip[p] = true;
    }
    const long D = s.total_dim();
    MatrixXcd out(D, D);
    for (long r = 0; r < D; ++r) {
        IndexTuple ri = s.tuple_of(r);
        for (long c = 0; c < D; ++c) {
            IndexTuple ci = s.tuple_of(c);
            IndexTuple rr = ri, cc = ci;
            for (int j = 0; j < s.parts(); ++j)
                if (flip[j]) std::swap(rr[j], cc[j]);
            out(s.flat_index(rr), s.flat_index(cc)) = rho.matrix(r, c);
        }
    }
    return out;
}

struct CutReport {
    std::vector<int> parts;  // 0-based
    double min_eig = 0.0;
    bool ppt = false;
};

struct PptReport {
    std::vector<CutReport> cuts;
    bool ppt_all = false;
};

// Checks every inequivalent bipartition (2^{k-1} - 1 cuts: subsets that
// contain part 0, excluding the full set).
inline PptReport is_ppt(const DensityOperator& rho, const Tolerances& tol = {}) {
    const int k = rho.shape.parts();
    PptReport report;
    report.ppt_all = true;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        if (!(mask & 1u)) continue;           // fix part 0 on one side
        if (mask == (1u << k) - 1) continue;  // full set is no cut
        CutReport cut;
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j)) cut.parts.push_back(j);
        MatrixXcd pt = partial_transpose(rho, cut.parts);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
        cut.min_eig = es.eigenvalues()(0);
        cut.ppt = cut.min_eig >= -tol.tol_eig;
        report.ppt_all = report.ppt_all && cut.ppt;
        report.cuts.push_back(std::move(cut));
    }
    return report;
}

struct RangeCertificate {
    bool entangled = false;    // certified entangled (tau = 0 on the range)
    bool conclusive = false;   // false when product vectors were found
    int range_dim = 0;
    EnumerationResult enumeration;
};

// Range criterion: a separable state's range is spanned by product vectors,
// so an empty product set in the range certifies entanglement.
inline RangeCertificate certify_entangled_by_range(const DensityOperator& rho,
                                                   const SearchConfig& cfg = {}) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.matrix);
    std::vector<long> keep;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > cfg.tol.tol_eig) keep.push_back(i);
    MatrixXcd basis(rho.matrix.rows(), keep.size());
    for (size_t c = 0; c < keep.size(); ++c) basis.col(c) = es.eigenvectors().col(keep[c]);
    Subspace range(rho.shape, std::move(basis));

    RangeCertificate cert;
    cert.range_dim = range.dim();
    cert.enumeration = enumerate_products(range, cfg);
    cert.entangled = !cert.enumeration.infinite && cert.enumeration.rays.empty();
    cert.conclusive = cert.entangled;
    return cert;
}

}  // namespace ces
