#pragma once

// Builders for the named objects: the TILES UPB and its sixth product
// vector, the 3-qubit UPB, van der Monde vectors, the span F of all van der
// Monde vectors, the Parthasarathy space S_P, and the perturbed spaces
// reachable through the NamedSpace factory.

#include "ces/core.hpp"
#include "ces/product.hpp"
#include "ces/subspace.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <variant>

namespace ces {

// ---------------------------------------------------------------------------
// TILES UPB in C^3 x C^3

inline std::vector<ProductVector> tiles_upb() {
    SystemShape s({3, 3});
    const double r2 = 1.0 / std::sqrt(2.0);
    auto f = [](double a, double b, double c) {
        VectorXcd v(3);
        v << a, b, c;
        return v;
    };
    std::vector<ProductVector> out;
    out.emplace_back(s, std::vector<VectorXcd>{f(1, 0, 0), r2 * f(1, -1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{f(0, 0, 1), r2 * f(0, 1, -1)});
    out.emplace_back(s, std::vector<VectorXcd>{r2 * f(1, -1, 0), f(0, 0, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{r2 * f(0, -1, 1), f(1, 0, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{f(1, 1, 1) / 3.0, f(1, 1, 1)});
    return out;
}

// The sixth product vector in the TILES span: (1/9)(2|0>-|1>+2|2>)^{x2}.
inline ProductVector tiles_chi() {
    SystemShape s({3, 3});
    VectorXcd f(3);
    f << 2, -1, 2;
    return ProductVector(s, {f / 9.0, f});
}

// ---------------------------------------------------------------------------
// 3-qubit UPB: |0,1,+>, |1,+,0>, |+,0,1>, |-,-,->

inline std::vector<ProductVector> shifts3q_upb() {
    SystemShape s({2, 2, 2});
    const double r2 = 1.0 / std::sqrt(2.0);
    VectorXcd e0(2), e1(2), plus(2), minus(2);
    e0 << 1, 0;
    e1 << 0, 1;
    plus << r2, r2;
    minus << r2, -r2;
    std::vector<ProductVector> out;
    out.emplace_back(s, std::vector<VectorXcd>{e0, e1, plus});
    out.emplace_back(s, std::vector<VectorXcd>{e1, plus, e0});
    out.emplace_back(s, std::vector<VectorXcd>{plus, e0, e1});
    out.emplace_back(s, std::vector<VectorXcd>{minus, minus, minus});
    return out;
}

// ---------------------------------------------------------------------------
// van der Monde vectors

// A point of the extended complex plane: a finite value or infinity.
struct VdMParameter {
    bool infinite = false;
    cd value{};

    static VdMParameter inf() { return {true, {}}; }
    static VdMParameter finite(cd v) { return {false, v}; }

    bool operator==(const VdMParameter& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

// z_lambda has factor (1, lambda, ..., lambda^{d_j-1}) in part j;
// z_inf is the top basis product vector.
inline ProductVector vdm_vector(const SystemShape& shape, const VdMParameter& p) {
    std::vector<VectorXcd> factors;
    for (int j = 0; j < shape.parts(); ++j) {
        VectorXcd f = VectorXcd::Zero(shape.dim(j));
        if (p.infinite) {
            f(shape.dim(j) - 1) = 1.0;
        } else {
            cd pw = 1.0;
            for (int t = 0; t < shape.dim(j); ++t) {
                f(t) = pw;
                pw *= p.value;
            }
        }
        factors.push_back(std::move(f));
    }
    return ProductVector(shape, std::move(factors));
}

namespace detail {

inline void require_entangling_shape(const SystemShape& shape, const char* who) {
    if (shape.parts() < 2 || !shape.all_parts_at_least(2))
        throw std::invalid_argument(std::string(who) + ": need k >= 2 and every d_j >= 2");
}

// Level-sum vector w_n = sum over |i| = n of e_i.
inline TensorVector level_sum(const SystemShape& shape, int n) {
    TensorVector w = TensorVector::zero(shape);
    for (const auto& i : enumerate_level(shape, n)) w.at(i) = 1.0;
    return w;
}

}  // namespace detail

// The N-dimensional span F of all van der Monde vectors, built from the
// level-sum vectors w_n (integer coefficients, exactly spanning the z's).
inline Subspace f_span(const SystemShape& shape, const Tolerances& tol = {}) {
    detail::require_entangling_shape(shape, "f_span");
    std::vector<TensorVector> ws;
    for (int n = 0; n <= shape.Nprime(); ++n) ws.push_back(detail::level_sum(shape, n));
    return span(ws, tol);
}

// S_P = F^perp, dimension D - N, built directly from the level constraints:
// within each level the consecutive differences e_i - e_{i'} over
// lexicographically adjacent tuples.
inline Subspace parthasarathy_space(const SystemShape& shape, const Tolerances& tol = {}) {
    detail::require_entangling_shape(shape, "parthasarathy_space");
    std::vector<TensorVector> gens;
    for (int n = 0; n <= shape.Nprime(); ++n) {
        auto tuples = enumerate_level(shape, n);
        for (size_t r = 0; r + 1 < tuples.size(); ++r) {
            TensorVector g = TensorVector::zero(shape);
            g.at(tuples[r]) = 1.0;
            g.at(tuples[r + 1]) = -1.0;
            gens.push_back(std::move(g));
        }
    }
    if (gens.empty()) return Subspace(shape, MatrixXcd(shape.total_dim(), 0));
    return span(gens, tol);
}

// ---------------------------------------------------------------------------
// NamedSpace: uniform factory over the named space tags.

enum class SpaceTag { U, SU, V, SV, F, SP };

// A perturbation member: a UPB member index, the TILES chi vector, or a
// van der Monde parameter.
struct ChiMember {};
using SpaceMember = std::variant<int, ChiMember, VdMParameter>;

struct NamedSpace {
    SpaceTag tag;
    std::vector<SpaceMember> members;
    SystemShape shape;
};

// Parses "a+bi" style complex literals; also accepts "i", "-i", "2i", "3".
inline cd parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    auto parse_real = [](const std::string& t) -> double {
        size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument("bad numeric literal: " + t);
        return v;
    };
    // split at the last +/- that is not a leading sign or exponent sign
    size_t split = std::string::npos;
    for (size_t p = s.size(); p-- > 1;) {
        if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    auto parse_imag_part = [&](std::string t) -> double {
        // t ends with 'i'
        t.pop_back();
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (s.back() == 'i') {
        if (split == std::string::npos) return cd(0.0, parse_imag_part(s));
        return cd(parse_real(s.substr(0, split)), parse_imag_part(s.substr(split)));
    }
    return cd(parse_real(s), 0.0);
}

inline VdMParameter parse_vdm_parameter(const std::string& text) {
    if (text == "inf" || text == "infinity") return VdMParameter::inf();
    return VdMParameter::finite(parse_complex(text));
}

// Grammar: NAME("+" MEMBER)* with MEMBER a digit string (UPB index), "chi",
// or "z(EXPR)".  `dims` applies to the shape-generic tags F and SP.
inline NamedSpace parse_named_space(const std::string& text, const std::vector<int>& dims = {}) {
    std::vector<std::string> tokens;
    size_t start = 0;
    int depth = 0;
    for (size_t p = 0; p <= text.size(); ++p) {
        if (p == text.size() || (text[p] == '+' && depth == 0)) {
            tokens.push_back(text.substr(start, p - start));
            start = p + 1;
        } else if (text[p] == '(') {
            ++depth;
        } else if (text[p] == ')') {
            --depth;
        }
    }
    if (tokens.empty() || tokens.front().empty())
        throw std::invalid_argument("empty space spec");

    const std::string& name = tokens.front();
    SpaceTag tag;
    SystemShape shape({1});
    if (name == "U" || name == "SU") {
        tag = (name == "U") ? SpaceTag::U : SpaceTag::SU;
        shape = SystemShape({3, 3});
    } else if (name == "V" || name == "SV") {
        tag = (name == "V") ? SpaceTag::V : SpaceTag::SV;
        shape = SystemShape({2, 2, 2});
    } else if (name == "F" || name == "SP") {
        tag = (name == "F") ? SpaceTag::F : SpaceTag::SP;
        if (dims.empty())
            throw std::invalid_argument(name + " needs --dims");
        shape = SystemShape(dims);
    } else {
        throw std::invalid_argument("unknown space name: " + name +
                                    " (expected U, SU, V, SV, F, or SP)");
    }

    NamedSpace spec{tag, {}, shape};
    for (size_t t = 1; t < tokens.size(); ++t) {
        const std::string& m = tokens[t];
        if (m == "chi") {
            spec.members.emplace_back(ChiMember{});
        } else if (m.size() > 2 && m.substr(0, 2) == "z(" && m.back() == ')') {
            spec.members.emplace_back(parse_vdm_parameter(m.substr(2, m.size() - 3)));
        } else if (!m.empty() && std::isdigit(static_cast<unsigned char>(m[0]))) {
            spec.members.emplace_back(std::stoi(m));
        } else {
            throw std::invalid_argument("bad space member: " + m);
        }
    }
    return spec;
}

inline void validate_named_space(const NamedSpace& spec) {
    for (const auto& m : spec.members) {
        switch (spec.tag) {
            case SpaceTag::U:
            case SpaceTag::SU:
                if (std::holds_alternative<VdMParameter>(m))
                    throw std::invalid_argument("z(..) members apply only to F/SP");
                if (auto* idx = std::get_if<int>(&m); idx && (*idx < 0 || *idx > 4))
                    throw std::invalid_argument("TILES member index must be 0..4");
                break;
            case SpaceTag::V:
            case SpaceTag::SV:
                if (!std::holds_alternative<int>(m))
                    throw std::invalid_argument("3-qubit UPB members are indices 1..4");
                if (int idx = std::get<int>(m); idx < 1 || idx > 4)
                    throw std::invalid_argument("3-qubit UPB member index must be 1..4");
                break;
            case SpaceTag::F:
            case SpaceTag::SP:
                if (!std::holds_alternative<VdMParameter>(m))
                    throw std::invalid_argument("F/SP members must be z(..)");
                break;
        }
    }
}

inline Subspace named_space(const NamedSpace& spec, const Tolerances& tol = {}) {
    validate_named_space(spec);

    auto member_vectors = [&](const std::vector<ProductVector>& upb,
                              bool one_based) -> std::vector<TensorVector> {
        std::vector<TensorVector> extras;
        for (const auto& m : spec.members) {
            if (std::holds_alternative<ChiMember>(m)) {
                extras.push_back(tiles_chi().to_tensor());
            } else if (auto* idx = std::get_if<int>(&m)) {
                extras.push_back(upb[*idx - (one_based ? 1 : 0)].to_tensor());
            } else {
                extras.push_back(vdm_vector(spec.shape, std::get<VdMParameter>(m)).to_tensor());
            }
        }
        return extras;
    };

    switch (spec.tag) {
        case SpaceTag::U: {
            std::vector<TensorVector> vs;
            for (const auto& p : tiles_upb()) vs.push_back(p.to_tensor());
            for (auto& e : member_vectors(tiles_upb(), false)) vs.push_back(std::move(e));
            return span(vs, tol);
        }
        case SpaceTag::SU: {
            Subspace base = complement(span(
                [] {
                    std::vector<TensorVector> vs;
                    for (const auto& p : tiles_upb()) vs.push_back(p.to_tensor());
                    return vs;
                }(),
                tol), tol);
            return perturb(base, member_vectors(tiles_upb(), false), tol);
        }
        case SpaceTag::V: {
            std::vector<TensorVector> vs;
            for (const auto& p : shifts3q_upb()) vs.push_back(p.to_tensor());
            for (auto& e : member_vectors(shifts3q_upb(), true)) vs.push_back(std::move(e));
            return span(vs, tol);
        }
        case SpaceTag::SV: {
            Subspace base = complement(span(
                [] {
                    std::vector<TensorVector> vs;
                    for (const auto& p : shifts3q_upb()) vs.push_back(p.to_tensor());
                    return vs;
                }(),
                tol), tol);
            return perturb(base, member_vectors(shifts3q_upb(), true), tol);
        }
        case SpaceTag::F:
            return perturb(f_span(spec.shape, tol), member_vectors({}, false), tol);
        case SpaceTag::SP:
            return perturb(parthasarathy_space(spec.shape, tol), member_vectors({}, false), tol);
    }
    throw std::logic_error("unreachable");
}

inline std::string space_name(const NamedSpace& spec) {
    std::string out;
    switch (spec.tag) {
        case SpaceTag::U: out = "U"; break;
        case SpaceTag::SU: out = "SU"; break;
        case SpaceTag::V: out = "V"; break;
        case SpaceTag::SV: out = "SV"; break;
        case SpaceTag::F: out = "F"; break;
        case SpaceTag::SP: out = "SP"; break;
    }
    for (const auto& m : spec.members) {
        out += "+";
        if (std::holds_alternative<ChiMember>(m)) {
            out += "chi";
        } else if (auto* idx = std::get_if<int>(&m)) {
            out += std::to_string(*idx);
        } else {
            const auto& p = std::get<VdMParameter>(m);
            if (p.infinite) {
                out += "z(inf)";
            } else {
                std::ostringstream os;
                os << "z(" << p.value.real();
                if (p.value.imag() != 0) os << (p.value.imag() > 0 ? "+" : "") << p.value.imag() << "i";
                os << ")";
                out += os.str();
            }
        }
    }
    return out;
}

}  // namespace ces
