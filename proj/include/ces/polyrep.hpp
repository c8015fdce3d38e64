#pragma once

// Polynomial view of tensor vectors: basis vector |i_1..i_k> corresponds to
// the monomial X_1^{i_1}...X_k^{i_k}.  The coefficient layout is identical
// to TensorVector, so the conversions are relabelings.

#include "ces/core.hpp"

#include <cmath>
#include <sstream>

namespace ces {

struct PolynomialRep {
    SystemShape shape;
    VectorXcd coeffs;  // one per monomial exponent tuple, lexicographic

    PolynomialRep(SystemShape s, VectorXcd c) : shape(std::move(s)), coeffs(std::move(c)) {
        if (coeffs.size() != shape.total_dim())
            throw std::invalid_argument("PolynomialRep: coefficient count must equal D");
    }
};

inline PolynomialRep to_poly(const TensorVector& v) { return PolynomialRep(v.shape, v.amp); }

inline TensorVector from_poly(const PolynomialRep& p) { return TensorVector(p.shape, p.coeffs); }

// Restriction to monomials of total degree n.
inline PolynomialRep homogeneous_part(const PolynomialRep& p, int n) {
    if (n < 0 || n > p.shape.Nprime())
        throw std::out_of_range("homogeneous_part: degree out of range");
    VectorXcd out = VectorXcd::Zero(p.coeffs.size());
    for (long f = 0; f < p.coeffs.size(); ++f)
        if (tuple_level(p.shape.tuple_of(f)) == n) out(f) = p.coeffs(f);
    return PolynomialRep(p.shape, std::move(out));
}

namespace detail {

// Count of coefficients at level n that are nonzero relative to the
// polynomial's largest coefficient.
inline int level_term_count(const PolynomialRep& p, int n, double cut) {
    int count = 0;
    for (long f = 0; f < p.coeffs.size(); ++f)
        if (tuple_level(p.shape.tuple_of(f)) == n && std::abs(p.coeffs(f)) > cut) ++count;
    return count;
}

}  // namespace detail

// A polynomial is conical when its lowest and highest nonzero homogeneous
// parts each consist of a single monomial.  Every product vector has a
// conical representation; the converse fails.
inline bool is_conical(const PolynomialRep& p, const Tolerances& tol = {}) {
    const double maxc = p.coeffs.cwiseAbs().maxCoeff();
    if (maxc == 0) throw std::invalid_argument("is_conical: zero polynomial");
    const double cut = tol.tol_eq * maxc;
    int lo = -1, hi = -1;
    for (int n = 0; n <= p.shape.Nprime(); ++n) {
        if (detail::level_term_count(p, n, cut) > 0) {
            if (lo < 0) lo = n;
            hi = n;
        }
    }
    return detail::level_term_count(p, lo, cut) == 1 && detail::level_term_count(p, hi, cut) == 1;
}

namespace detail {

inline std::string format_coeff(cd c, bool leading) {
    std::ostringstream os;
    auto fmt = [](double x) {
        std::ostringstream o;
        if (x == static_cast<long>(x))
            o << static_cast<long>(x);
        else
            o << x;
        return o.str();
    };
    const double re = c.real(), im = c.imag();
    std::string body;
    if (std::abs(im) < 1e-12) {
        body = fmt(std::abs(re));
        if (re < 0) return leading ? "-" + body : "- " + body;
        return leading ? body : "+ " + body;
    }
    if (std::abs(re) < 1e-12) {
        body = (std::abs(std::abs(im) - 1) < 1e-12 ? "i" : fmt(std::abs(im)) + "i");
        if (im < 0) return leading ? "-" + body : "- " + body;
        return leading ? body : "+ " + body;
    }
    os << "(" << fmt(re) << (im >= 0 ? "+" : "-")
       << (std::abs(std::abs(im) - 1) < 1e-12 ? "" : fmt(std::abs(im))) << "i)";
    return leading ? os.str() : "+ " + os.str();
}

}  // namespace detail

// Human-readable form, e.g. "1 - Y" or "X^2 Y^2 - X^2 Y".
inline std::string to_string(const PolynomialRep& p, double zero_cut = 1e-12) {
    static const char* letters = "XYZWVU";
    std::ostringstream os;
    bool first = true;
    for (long f = 0; f < p.coeffs.size(); ++f) {
        cd c = p.coeffs(f);
        if (std::abs(c) <= zero_cut) continue;
        IndexTuple t = p.shape.tuple_of(f);
        std::string mono;
        for (int j = 0; j < p.shape.parts(); ++j) {
            if (t[j] == 0) continue;
            if (!mono.empty()) mono += " ";
            if (p.shape.parts() <= 6)
                mono += letters[j];
            else
                mono += "X" + std::to_string(j + 1);
            if (t[j] > 1) mono += "^" + std::to_string(t[j]);
        }
        bool unit = std::abs(c - cd(1, 0)) < 1e-12 || std::abs(c + cd(1, 0)) < 1e-12;
        std::string cs;
        if (mono.empty() || !unit) {
            cs = detail::format_coeff(c, first);
        } else {
            cs = (c.real() < 0) ? (first ? "-" : "- ") : (first ? "" : "+ ");
        }
        if (!first) os << " ";
        os << cs;
        if (!mono.empty()) {
            if (!cs.empty() && cs.back() != '-' && !unit) os << " ";
            if (unit && !cs.empty() && cs.back() == '-') {
                os << mono;
            } else if (unit) {
                os << mono;
            } else {
                os << mono;
            }
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

}  // namespace ces
