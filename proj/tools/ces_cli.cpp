// ces-toolkit: build the named spaces, enumerate their product rays, run the
// PPT / range-criterion checks, and run the full verification suite.

#include "ces/json_io.hpp"
#include "ces/polyrep.hpp"
#include "ces/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

using namespace ces;

constexpr const char* kVersion = "1.0.0";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CES_TOOLKIT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("CES_TOOLKIT_SEED must be a non-negative integer");
        }
    }
    return 0;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos ? comma : comma - start);
        if (tok.empty()) throw std::invalid_argument("--dims: empty entry");
        dims.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (dims.empty()) throw std::invalid_argument("--dims: no entries");
    return dims;
}

struct CommonFlags {
    std::string dims_text;
    std::uint64_t seed = default_seed();
    int restarts = 400;
    double tol_zero = 1e-8;
    double tol_rank = 1e-9;
    bool json = false;
    bool force_oracle = false;

    SearchConfig search() const {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.restarts = restarts;
        cfg.tol.tol_zero = tol_zero;
        cfg.tol.tol_rank = tol_rank;
        cfg.validate();
        return cfg;
    }

    std::vector<int> dims() const {
        return dims_text.empty() ? std::vector<int>{} : parse_dims(dims_text);
    }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_search) {
    cmd->add_option("--dims", flags.dims_text, "comma-separated local dimensions, e.g. 3,3");
    cmd->add_flag("--json", flags.json, "emit a machine-readable JSON report");
    if (with_search) {
        cmd->add_option("--seed", flags.seed, "search seed (default: CES_TOOLKIT_SEED or 0)");
        cmd->add_option("--restarts", flags.restarts, "random restarts for the search");
        cmd->add_option("--tol-zero", flags.tol_zero, "membership residual threshold");
        cmd->add_option("--tol-rank", flags.tol_rank, "rank-1 singular value threshold");
    }
}

json report_shell(const std::string& command, std::uint64_t seed) {
    return json{{"command", command}, {"version", kVersion}, {"seed", seed}};
}

void finish_report(json& report, std::chrono::steady_clock::time_point t0) {
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_rays(const EnumerationResult& result) {
    const auto& rays = result.infinite ? result.family_samples : result.rays;
    for (size_t i = 0; i < rays.size(); ++i) {
        std::cout << "  ray " << (i + 1) << ": " << to_string(to_poly(rays[i].to_tensor()));
        if (i < result.residuals.size())
            std::cout << "   (residual " << result.residuals[i] << ")";
        std::cout << "\n";
    }
}

// Expected product index when one of the verified statements covers the
// space; nullopt when no statement applies.  -1 encodes "infinite".
std::optional<int> expected_tau(const NamedSpace& spec) {
    auto is_int = [](const SpaceMember& m, int v) {
        auto* p = std::get_if<int>(&m);
        return p && *p == v;
    };
    switch (spec.tag) {
        case SpaceTag::U:
            return spec.members.empty() ? std::optional<int>(6) : std::nullopt;
        case SpaceTag::V:
            return spec.members.empty() ? std::optional<int>(4) : std::nullopt;
        case SpaceTag::SU:
            if (spec.members.empty()) return 0;
            if (spec.members.size() == 1 && std::holds_alternative<int>(spec.members[0])) return 6;
            if (spec.members.size() == 2 &&
                ((is_int(spec.members[0], 0) && (is_int(spec.members[1], 1) || is_int(spec.members[1], 4)))))
                return -1;
            return std::nullopt;
        case SpaceTag::SV:
            if (spec.members.empty()) return 0;
            if (spec.members.size() == 1) return 6;
            if (spec.members.size() == 2 && is_int(spec.members[0], 1) && is_int(spec.members[1], 2))
                return -1;
            return std::nullopt;
        case SpaceTag::F:
            return -1;  // contains every van der Monde ray
        case SpaceTag::SP: {
            if (spec.members.empty()) return 0;
            if (spec.members.size() == 1) {
                const auto& p = std::get<VdMParameter>(spec.members[0]);
                if (p.infinite || p.value == cd(0.0)) return 1;
                if (spec.shape.all_parts_at_least(2) && !spec.shape.all_parts_at_least(3) &&
                    spec.shape.total_dim() == (1 << spec.shape.parts()) && p.value == cd(1.0))
                    return 1;  // all-qubit rigidity
                if (spec.shape.parts() == 2 && spec.shape.dim(0) == 2) {
                    int d = spec.shape.dim(1);
                    if (d >= 3) return d % 2 ? d : d - 1;
                }
                if (spec.shape.dims() == std::vector<int>{3, 3}) return 3;
                return std::nullopt;
            }
            if (spec.members.size() == 2) return -1;  // double perturbations
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// Closed-form solver for the spaces with a known exact answer; nullopt when only
// the search applies.
std::optional<EnumerationResult> closed_form(const NamedSpace& spec, const SearchConfig& cfg) {
    if (spec.tag != SpaceTag::SP && spec.tag != SpaceTag::SU && spec.tag != SpaceTag::SV)
        return std::nullopt;
    const Tolerances& tol = cfg.tol;
    auto certify = [&](Family fam) -> EnumerationResult {
        return certify_infinite(family_space(fam, tol), fam, 50, tol);
    };
    auto is_int = [](const SpaceMember& m, int v) {
        auto* p = std::get_if<int>(&m);
        return p && *p == v;
    };
    if (spec.tag == SpaceTag::SU && spec.members.size() == 2 && is_int(spec.members[0], 0)) {
        if (is_int(spec.members[1], 1)) return certify({FamilyName::SU01});
        if (is_int(spec.members[1], 4)) return certify({FamilyName::SU04});
        return std::nullopt;
    }
    if (spec.tag == SpaceTag::SV && spec.members.size() == 2 && is_int(spec.members[0], 1) &&
        is_int(spec.members[1], 2))
        return certify({FamilyName::SV12});
    if (spec.tag != SpaceTag::SP) return std::nullopt;

    std::vector<VdMParameter> ps;
    for (const auto& m : spec.members) ps.push_back(std::get<VdMParameter>(m));
    const SystemShape& shape = spec.shape;
    if (ps.size() == 1) {
        const VdMParameter& p = ps[0];
        if (p.infinite || p.value == cd(0.0)) return solve_sp_endpoints(shape, p, tol);
        bool all_qubits = shape.all_parts_at_least(2) && !shape.all_parts_at_least(3) &&
                          shape.total_dim() == (1L << shape.parts());
        if (all_qubits && p.value == cd(1.0)) return solve_qubits_rigidity(shape.parts(), tol);
        if (shape.parts() == 2 && shape.dim(0) == 2 && shape.dim(1) >= 3)
            return solve_2xd(shape.dim(1), p.value, tol);
        if (shape.dims() == std::vector<int>{3, 3}) return solve_3x3(p.value, tol);
        return std::nullopt;
    }
    if (ps.size() == 2) {
        bool has0 = false, hasinf = false;
        for (const auto& p : ps) {
            if (p.infinite) hasinf = true;
            else if (p.value == cd(0.0)) has0 = true;
        }
        if (has0 && hasinf && shape.parts() == 2 && shape.dim(0) == shape.dim(1)) {
            Family fam{FamilyName::SP_0INF};
            fam.d = shape.dim(0);
            return certify(fam);
        }
        if (hasinf && !has0 && shape.dims() == std::vector<int>{3, 3}) {
            for (const auto& p : ps)
                if (!p.infinite && p.value == cd(1.0)) return certify({FamilyName::SP_1INF_3x3});
            return std::nullopt;
        }
        if (!hasinf && !has0) {
            cd lambda = ps[0].value, mu = ps[1].value;
            if (lambda == mu) return std::nullopt;
            if (shape.dims() == std::vector<int>{3, 3})
                return certify({FamilyName::SP_LM_3x3, 3, lambda, mu});
            if (shape.dims() == std::vector<int>{2, 2, 2})
                return certify({FamilyName::SP_LM_QUBITS3, 3, lambda, mu});
        }
        return std::nullopt;
    }
    return std::nullopt;
}

int cmd_construct(const std::string& spec_text, const CommonFlags& flags, bool show_basis) {
    auto t0 = std::chrono::steady_clock::now();
    NamedSpace spec = parse_named_space(spec_text, flags.dims());
    Subspace S = named_space(spec);
    if (flags.json) {
        json report = report_shell("construct " + spec_text, flags.seed);
        report["space"] = space_name(spec);
        report["dim"] = S.dim();
        report["subspace"] = to_json(S);
        finish_report(report, t0);
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "space " << space_name(spec) << " on (";
    for (int j = 0; j < S.shape().parts(); ++j)
        std::cout << (j ? "," : "") << S.shape().dim(j);
    std::cout << ")\n";
    std::cout << "dimension " << S.dim() << "\n";
    if (show_basis) {
        for (int i = 0; i < S.dim(); ++i)
            std::cout << "  basis " << (i + 1) << ": "
                      << to_string(to_poly(S.basis_vector(i)), 1e-9) << "\n";
    }
    return 0;
}

int cmd_enumerate(const std::string& spec_text, const CommonFlags& flags) {
    auto t0 = std::chrono::steady_clock::now();
    NamedSpace spec = parse_named_space(spec_text, flags.dims());
    Subspace S = named_space(spec, flags.search().tol);
    SearchConfig cfg = flags.search();

    std::optional<EnumerationResult> closed;
    if (!flags.force_oracle) closed = closed_form(spec, cfg);
    EnumerationResult result = closed ? *closed : enumerate_products(S, cfg);
    result.seed = cfg.seed;

    std::optional<int> expect = expected_tau(spec);
    bool pass = true;
    if (expect)
        pass = (*expect == -1) ? result.infinite : (!result.infinite && result.tau() == *expect);

    if (flags.json) {
        json report = report_shell("enumerate " + spec_text, flags.seed);
        report["result"] = to_json(result, space_name(spec));
        report["method"] = closed ? "closed-form" : "search";
        if (expect) {
            report["expected_tau"] = (*expect == -1) ? json("infinite") : json(*expect);
            report["pass"] = pass;
        }
        finish_report(report, t0);
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << "space " << space_name(spec) << " (dim " << S.dim() << ", "
                  << (closed ? "closed-form" : "search") << ")\n";
        if (result.infinite)
            std::cout << "product rays: INFINITE (" << result.family_samples.size()
                      << " family samples below)\n";
        else
            std::cout << "product index tau = " << result.tau() << "\n";
        print_rays(result);
        if (expect) {
            std::cout << "expected: ";
            if (*expect == -1)
                std::cout << "INFINITE";
            else
                std::cout << "tau = " << *expect;
            std::cout << "  ->  " << (pass ? "PASS" : "FAIL") << "\n";
        }
    }
    return pass ? 0 : 1;
}

int cmd_ppt(const std::string& upb_name, const CommonFlags& flags, int cut_index) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<ProductVector> upb;
    if (upb_name == "tiles")
        upb = tiles_upb();
    else if (upb_name == "shifts3q")
        upb = shifts3q_upb();
    else
        throw CLI::ValidationError("ppt", "unknown UPB name (expected: tiles | shifts3q)");

    SearchConfig cfg = flags.search();
    DensityOperator rho = upb_complement_state(upb, cfg.tol);
    PptReport report = is_ppt(rho, cfg.tol);
    if (cut_index > 0) {
        if (cut_index > static_cast<int>(report.cuts.size()))
            throw CLI::ValidationError("--cut", "cut index out of range");
        PptReport single;
        single.cuts.push_back(report.cuts[cut_index - 1]);
        single.ppt_all = single.cuts[0].ppt;
        report = single;
    }
    RangeCertificate cert = certify_entangled_by_range(rho, cfg);

    if (flags.json) {
        json out = report_shell("ppt " + upb_name, flags.seed);
        out["state"] = upb_name;
        out["ppt"] = to_json(report);
        out["range_dim"] = cert.range_dim;
        out["entangled"] = cert.entangled;
        finish_report(out, t0);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "state: complement of the " << upb_name << " UPB ("
                  << rho.shape.total_dim() << "-dimensional system)\n";
        for (const auto& cut : report.cuts) {
            std::cout << "  cut {";
            for (size_t i = 0; i < cut.parts.size(); ++i)
                std::cout << (i ? "," : "") << (cut.parts[i] + 1);
            std::cout << "}: min PT eigenvalue " << cut.min_eig << "  ->  "
                      << (cut.ppt ? "PPT" : "NPT") << "\n";
        }
        std::cout << "PPT on all cuts: " << (report.ppt_all ? "yes" : "no") << "\n";
        std::cout << "range dimension " << cert.range_dim << ", product rays in range: "
                  << cert.enumeration.tau() << "\n";
        std::cout << "entangled by the range criterion: " << (cert.entangled ? "yes" : "no")
                  << "\n";
    }
    return (report.ppt_all && cert.entangled) ? 0 : 1;
}

int cmd_verify_all(const CommonFlags& flags) {
    SearchConfig cfg = flags.search();
    if (flags.json) {
        auto results = ces::verify::run_acceptance(cfg, nullptr);
        json rows = json::array();
        bool all = true;
        for (const auto& res : results) {
            rows.push_back(json{{"id", res.id},
                                {"label", res.label},
                                {"pass", res.pass},
                                {"detail", res.detail},
                                {"seconds", res.seconds}});
            all = all && res.pass;
        }
        json report = report_shell("verify-all", flags.seed);
        report["rows"] = rows;
        report["all_pass"] = all;
        std::cout << report.dump(2) << "\n";
        return all ? 0 : 1;
    }
    auto results = ces::verify::run_acceptance(cfg, &std::cout);
    bool all = true;
    for (const auto& res : results) all = all && res.pass;
    std::cout << (all ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ces-toolkit: completely entangled subspaces, product-vector enumeration, "
                 "and bound-entanglement checks"};
    app.require_subcommand(1);

    std::string spec_text;
    std::string upb_name;
    int cut_index = 0;
    bool show_basis = false;

    CommonFlags construct_flags, enumerate_flags, ppt_flags, verify_flags;

    CLI::App* construct = app.add_subcommand("construct", "build a named space and report it");
    construct->add_option("space", spec_text, "space spec, e.g. U, SU+0, SP+z(1)")->required();
    construct->add_flag("--basis", show_basis, "print the orthonormal basis as polynomials");
    add_common(construct, construct_flags, false);

    CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate the product rays of a space");
    enumerate->add_option("space", spec_text, "space spec, e.g. U, SV+1, SP+z(1) --dims 2,5")
        ->required();
    enumerate->add_flag("--force-oracle", enumerate_flags.force_oracle,
                        "use the random-restart search even when a closed form applies");
    add_common(enumerate, enumerate_flags, true);

    CLI::App* ppt = app.add_subcommand("ppt", "PPT and range-criterion report for a UPB state");
    ppt->add_option("upb", upb_name, "tiles | shifts3q")->required();
    ppt->add_option("--cut", cut_index, "report a single bipartite cut (1-based)");
    add_common(ppt, ppt_flags, true);

    CLI::App* verify = app.add_subcommand("verify-all", "run the full verification suite");
    add_common(verify, verify_flags, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) return cmd_construct(spec_text, construct_flags, show_basis);
        if (enumerate->parsed()) return cmd_enumerate(spec_text, enumerate_flags);
        if (ppt->parsed()) return cmd_ppt(upb_name, ppt_flags, cut_index);
        if (verify->parsed()) return cmd_verify_all(verify_flags);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
