#pragma once

// JSON serialization for the CLI surface.  All forms use lexicographic
// tuple order, matching the in-memory layout.

#include "ces/enumerate.hpp"
#include "ces/states.hpp"

#include <json.hpp>

namespace ces {

using nlohmann::json;

inline json to_json(const TensorVector& v) {
    json re = json::array(), im = json::array();
    for (long f = 0; f < v.amp.size(); ++f) {
        re.push_back(v.amp(f).real());
        im.push_back(v.amp(f).imag());
    }
    return json{{"dims", v.shape.dims()}, {"re", re}, {"im", im}};
}

inline TensorVector tensor_from_json(const json& j) {
    SystemShape shape(j.at("dims").get<std::vector<int>>());
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != im.size() || static_cast<long>(re.size()) != shape.total_dim())
        throw std::invalid_argument("tensor JSON: amplitude count must equal D");
    VectorXcd amp(shape.total_dim());
    for (long f = 0; f < amp.size(); ++f)
        amp(f) = cd(re[f].get<double>(), im[f].get<double>());
    return TensorVector(shape, std::move(amp));
}

inline json to_json(const Subspace& S) {
    json basis = json::array();
    for (int i = 0; i < S.dim(); ++i) basis.push_back(to_json(S.basis_vector(i)));
    return json{{"dims", S.shape().dims()}, {"basis", basis}};
}

inline Subspace subspace_from_json(const json& j) {
    SystemShape shape(j.at("dims").get<std::vector<int>>());
    const auto& basis = j.at("basis");
    MatrixXcd B(shape.total_dim(), basis.size());
    for (size_t c = 0; c < basis.size(); ++c) B.col(c) = tensor_from_json(basis[c]).amp;
    return Subspace(shape, std::move(B));
}

inline json to_json(const ProductVector& p) {
    json factors = json::array();
    for (const auto& f : p.factors) {
        json re = json::array(), im = json::array();
        for (long t = 0; t < f.size(); ++t) {
            re.push_back(f(t).real());
            im.push_back(f(t).imag());
        }
        factors.push_back(json{{"re", re}, {"im", im}});
    }
    return json{{"dims", p.shape.dims()}, {"factors", factors}};
}

inline ProductVector product_from_json(const json& j) {
    SystemShape shape(j.at("dims").get<std::vector<int>>());
    std::vector<VectorXcd> factors;
    for (const auto& fj : j.at("factors")) {
        const auto& re = fj.at("re");
        const auto& im = fj.at("im");
        VectorXcd f(re.size());
        for (long t = 0; t < f.size(); ++t) f(t) = cd(re[t].get<double>(), im[t].get<double>());
        factors.push_back(std::move(f));
    }
    return ProductVector(shape, std::move(factors));
}

inline json to_json(const EnumerationResult& r, const std::string& space_name) {
    json rays = json::array();
    for (const auto& ray : r.rays) rays.push_back(to_json(ray));
    json samples = json::array();
    for (const auto& s : r.family_samples) samples.push_back(to_json(s));
    json out{{"space", space_name},
             {"rays", rays},
             {"residuals", r.residuals},
             {"restarts_used", r.restarts_used},
             {"seed", r.seed}};
    if (r.infinite)
        out["tau"] = "infinite";
    else
        out["tau"] = r.tau();
    if (r.likely_infinite) out["likely_infinite"] = true;
    if (!samples.empty()) out["family_samples"] = samples;
    return out;
}

inline json to_json(const PptReport& r) {
    json cuts = json::array();
    for (const auto& c : r.cuts) {
        std::vector<int> one_based;
        for (int p : c.parts) one_based.push_back(p + 1);
        cuts.push_back(json{{"parts", one_based}, {"min_eig", c.min_eig}, {"ppt", c.ppt}});
    }
    return json{{"cuts", cuts}, {"ppt_all", r.ppt_all}};
}

}  // namespace ces
