#pragma once

// The verification suite: one named check per headline claim, shared
// between the acceptance test binary and the CLI `verify-all` command.

#include "ces/json_io.hpp"
#include "ces/polyrep.hpp"
#include "ces/states.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>

namespace ces::verify {

struct CheckResult {
    int id = 0;
    std::string label;
    bool pass = false;
    std::string detail;  // first failure, or a short summary
    double seconds = 0.0;
};

namespace detail {

struct Reporter {
    bool ok = true;
    std::string first_failure;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
        ok = ok && cond;
    }
};

inline bool ray_sets_match(const std::vector<ProductVector>& a,
                           const std::vector<ProductVector>& b, const Tolerances& tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool found = false;
        for (size_t i = 0; i < b.size(); ++i) {
            if (!used[i] && ray_equal(x.to_tensor(), b[i].to_tensor(), tol)) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline VectorXcd v3(cd a, cd b, cd c) {
    VectorXcd v(3);
    v << a, b, c;
    return v;
}

inline VectorXcd v2(cd a, cd b) {
    VectorXcd v(2);
    v << a, b;
    return v;
}

// The six product rays in the singly perturbed TILES complements.
inline std::vector<ProductVector> su0_expected() {
    SystemShape s({3, 3});
    std::vector<ProductVector> out;
    out.push_back(tiles_upb()[0]);
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, -1, 0), v3(0, 1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, 1, 0), v3(0, 1, -1)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, 1, -2), v3(0, 1, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(2, -1, -1), v3(1, 0, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, 1, 1), v3(2, -1, -1)});
    return out;
}

inline std::vector<ProductVector> su4_expected() {
    SystemShape s({3, 3});
    std::vector<ProductVector> out;
    out.push_back(tiles_upb()[4]);
    out.emplace_back(s, std::vector<VectorXcd>{v3(0, 1, 0), v3(0, 1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, 0, 0), v3(1, 1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(1, 1, 0), v3(0, 0, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(0, 0, 1), v3(0, 1, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v3(0, 1, 1), v3(1, 0, 0)});
    return out;
}

inline std::vector<ProductVector> sv4_expected() {
    SystemShape s({2, 2, 2});
    std::vector<ProductVector> out;
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 0), v2(1, 0), v2(1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(0, 1), v2(0, 1), v2(0, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, -1), v2(1, -1), v2(1, -1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(0, 1), v2(1, -1), v2(1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 0), v2(0, 1), v2(1, -1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, -1), v2(1, 0), v2(0, 1)});
    return out;
}

inline std::vector<ProductVector> sv1_expected() {
    SystemShape s({2, 2, 2});
    std::vector<ProductVector> out;
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 0), v2(0, 1), v2(1, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, -1), v2(1, 1), v2(0, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, -1), v2(1, -1), v2(1, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 0), v2(1, 1), v2(1, 0)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 1), v2(0, 1), v2(0, 1)});
    out.emplace_back(s, std::vector<VectorXcd>{v2(1, 1), v2(1, -1), v2(1, 0)});
    return out;
}

}  // namespace detail

struct Check {
    int id;
    std::string label;
    std::function<void(detail::Reporter&, const SearchConfig&)> run;
};

inline std::vector<Check> acceptance_checks() {
    using detail::Reporter;
    std::vector<Check> checks;

    checks.push_back({1, "maximal CES dimension D - N", [](Reporter& r, const SearchConfig&) {
        r.require(parthasarathy_space(SystemShape({3, 3})).dim() == 4, "(3,3) dim != 4");
        r.require(parthasarathy_space(SystemShape({2, 2, 2})).dim() == 4, "(2,2,2) dim != 4");
        r.require(parthasarathy_space(SystemShape({2, 5})).dim() == 4, "(2,5) dim != 4");
        r.require(parthasarathy_space(SystemShape({3, 3, 3})).dim() == 20, "(3,3,3) dim != 20");
    }});

    checks.push_back({2, "TILES span has product index 6", [](Reporter& r, const SearchConfig& cfg) {
        EnumerationResult e = enumerate_products(named_space(parse_named_space("U"), cfg.tol), cfg);
        r.require(!e.infinite, "search reported infinite");
        r.require(e.tau() == 6, "tau != 6");
        for (double res : e.residuals) r.require(res < 1e-8, "residual >= 1e-8");
        std::vector<ProductVector> expected = tiles_upb();
        expected.push_back(tiles_chi());
        r.require(detail::ray_sets_match(e.rays, expected, cfg.tol), "ray set mismatch");
    }});

    checks.push_back({3, "TILES complement is completely entangled", [](Reporter& r, const SearchConfig& cfg) {
        EnumerationResult e = enumerate_products(named_space(parse_named_space("SU"), cfg.tol), cfg);
        r.require(!e.infinite && e.tau() == 0, "expected tau = 0");
    }});

    checks.push_back({4, "singly perturbed TILES complements have product index 6",
                      [](Reporter& r, const SearchConfig& cfg) {
        EnumerationResult e0 =
            enumerate_products(named_space(parse_named_space("SU+0"), cfg.tol), cfg);
        r.require(!e0.infinite && e0.tau() == 6, "SU+0 tau != 6");
        r.require(detail::ray_sets_match(e0.rays, detail::su0_expected(), cfg.tol),
                  "SU+0 ray set mismatch");
        EnumerationResult e4 =
            enumerate_products(named_space(parse_named_space("SU+4"), cfg.tol), cfg);
        r.require(!e4.infinite && e4.tau() == 6, "SU+4 tau != 6");
        r.require(detail::ray_sets_match(e4.rays, detail::su4_expected(), cfg.tol),
                  "SU+4 ray set mismatch");
    }});

    checks.push_back({5, "two complementary quasi-CES sum to the full space",
                      [](Reporter& r, const SearchConfig& cfg) {
        auto tiles = tiles_upb();
        std::vector<TensorVector> vs;
        for (int i = 1; i <= 4; ++i) vs.push_back(tiles[i].to_tensor());
        Subspace su0 = named_space(parse_named_space("SU+0"), cfg.tol);
        for (int i = 0; i < su0.dim(); ++i) vs.push_back(su0.basis_vector(i));
        r.require(span(vs, cfg.tol).dim() == 9, "direct sum rank != 9");
    }});

    checks.push_back({6, "3-qubit UPB span: four product rays, rest genuinely entangled",
                      [](Reporter& r, const SearchConfig& cfg) {
        Subspace V = named_space(parse_named_space("V"), cfg.tol);
        EnumerationResult e = enumerate_products(V, cfg);
        r.require(!e.infinite && e.tau() == 4, "tau != 4");
        r.require(detail::ray_sets_match(e.rays, shifts3q_upb(), cfg.tol), "ray set mismatch");

        SystemShape s({2, 2, 2});
        std::mt19937_64 rng(cfg.seed + 1000);
        std::normal_distribution<double> g;
        int checked = 0;
        for (int trial = 0; checked < 200 && trial < 1000; ++trial) {
            VectorXcd amp = VectorXcd::Zero(8);
            for (int i = 0; i < V.dim(); ++i) amp += cd(g(rng), g(rng)) * V.basis().col(i);
            TensorVector v(s, amp);
            bool is_upb_ray = false;
            for (const auto& p : shifts3q_upb())
                if (ray_equal(v, p.to_tensor(), cfg.tol)) is_upb_ray = true;
            if (is_upb_ray) continue;
            ++checked;
            for (auto cut : std::vector<std::vector<int>>{{0}, {1}, {2}})
                r.require(!is_product_across_cut(v, cut, cfg.tol),
                          "random span element factorized across a cut");
        }
        r.require(checked == 200, "could not draw 200 non-trivial samples");
    }});

    checks.push_back({7, "singly perturbed 3-qubit complements have product index 6",
                      [](Reporter& r, const SearchConfig& cfg) {
        EnumerationResult e4 =
            enumerate_products(named_space(parse_named_space("SV+4"), cfg.tol), cfg);
        r.require(!e4.infinite && e4.tau() == 6, "SV+4 tau != 6");
        r.require(detail::ray_sets_match(e4.rays, detail::sv4_expected(), cfg.tol),
                  "SV+4 ray set mismatch");
        EnumerationResult e1 =
            enumerate_products(named_space(parse_named_space("SV+1"), cfg.tol), cfg);
        r.require(!e1.infinite && e1.tau() == 6, "SV+1 tau != 6");
        r.require(detail::ray_sets_match(e1.rays, detail::sv1_expected(), cfg.tol),
                  "SV+1 ray set mismatch");
    }});

    checks.push_back({8, "endpoint perturbations keep exactly one product ray",
                      [](Reporter& r, const SearchConfig& cfg) {
        for (auto dims : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}, {2, 4}}) {
            SystemShape shape(dims);
            for (auto which : {VdMParameter::finite(0.0), VdMParameter::inf()}) {
                Subspace S = perturb(parthasarathy_space(shape, cfg.tol),
                                     vdm_vector(shape, which).to_tensor(), cfg.tol);
                EnumerationResult e = enumerate_products(S, cfg);
                r.require(!e.infinite && e.tau() == 1, "tau != 1");
                EnumerationResult closed = solve_sp_endpoints(shape, which, cfg.tol);
                r.require(detail::ray_sets_match(e.rays, closed.rays, cfg.tol),
                          "oracle disagrees with the closed form");
            }
        }
    }});

    checks.push_back({9, "all-qubit unit perturbation is rigid",
                      [](Reporter& r, const SearchConfig& cfg) {
        for (int k : {2, 3, 4}) {
            EnumerationResult closed = solve_qubits_rigidity(k, cfg.tol);
            r.require(closed.tau() == 1, "closed form tau != 1");
            SystemShape shape(std::vector<int>(k, 2));
            Subspace S = perturb(parthasarathy_space(shape, cfg.tol),
                                 vdm_vector(shape, VdMParameter::finite(1.0)).to_tensor(),
                                 cfg.tol);
            EnumerationResult e = enumerate_products(S, cfg);
            r.require(!e.infinite && e.tau() == 1, "oracle tau != 1");
            r.require(detail::ray_sets_match(e.rays, closed.rays, cfg.tol),
                      "oracle disagrees with the closed form");
        }
    }});

    checks.push_back({10, "2xd perturbation: product index d (odd) / d-1 (even)",
                      [](Reporter& r, const SearchConfig& cfg) {
        const int expected[] = {3, 3, 5, 5, 7};
        for (int d = 3; d <= 7; ++d) {
            EnumerationResult closed = solve_2xd(d, 1.0, cfg.tol);
            r.require(closed.tau() == expected[d - 3], "closed form count wrong");
            for (double res : closed.residuals) r.require(res < 1e-8, "closed residual >= 1e-8");
            if (d <= 5) {
                SystemShape shape({2, d});
                Subspace S = perturb(parthasarathy_space(shape, cfg.tol),
                                     vdm_vector(shape, VdMParameter::finite(1.0)).to_tensor(),
                                     cfg.tol);
                EnumerationResult e = enumerate_products(S, cfg);
                r.require(!e.infinite, "oracle reported infinite");
                r.require(detail::ray_sets_match(e.rays, closed.rays, cfg.tol),
                          "oracle disagrees with the closed form");
            }
        }
    }});

    checks.push_back({11, "3x3 perturbation has product index 3 at every lambda",
                      [](Reporter& r, const SearchConfig& cfg) {
        for (cd lambda : {cd(1.0), cd(2.0), cd(0.0, 1.0)}) {
            EnumerationResult closed = solve_3x3(lambda, cfg.tol);
            r.require(closed.tau() == 3, "closed form tau != 3");
            for (double res : closed.residuals) r.require(res < 1e-8, "residual >= 1e-8");
        }
        // omega-built rays at lambda = 1
        EnumerationResult base = solve_3x3(1.0, cfg.tol);
        SystemShape s({3, 3});
        cd omega = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
        ProductVector expect(s, {detail::v3(1.0, -2.0 * omega * omega, omega),
                                 detail::v3(1.0, -2.0 * omega, omega * omega)});
        bool found = false;
        for (const auto& ray : base.rays)
            if (ray_equal(ray.to_tensor(), expect.to_tensor(), cfg.tol)) found = true;
        r.require(found, "omega-built ray missing at lambda = 1");
        // rescaling covariance
        EnumerationResult scaled = solve_3x3(2.0, cfg.tol);
        std::vector<ProductVector> rescaled;
        for (const auto& ray : base.rays) {
            std::vector<VectorXcd> fs = ray.factors;
            for (auto& f : fs) {
                cd pw = 1.0;
                for (long t = 0; t < f.size(); ++t) {
                    f(t) *= pw;
                    pw *= 2.0;
                }
            }
            rescaled.emplace_back(ray.shape, fs);
        }
        r.require(detail::ray_sets_match(scaled.rays, rescaled, cfg.tol),
                  "rescaling covariance failed");
    }});

    checks.push_back({12, "UPB complement states are PPT yet entangled",
                      [](Reporter& r, const SearchConfig& cfg) {
        DensityOperator tiles_state = upb_complement_state(tiles_upb(), cfg.tol);
        PptReport p1 = is_ppt(tiles_state, cfg.tol);
        r.require(p1.ppt_all, "TILES state not PPT");
        for (const auto& cut : p1.cuts) r.require(cut.min_eig >= -1e-10, "eigenvalue below slack");
        RangeCertificate c1 = certify_entangled_by_range(tiles_state, cfg);
        r.require(c1.range_dim == 4 && c1.entangled, "TILES range certificate failed");

        DensityOperator q_state = upb_complement_state(shifts3q_upb(), cfg.tol);
        PptReport p2 = is_ppt(q_state, cfg.tol);
        r.require(p2.cuts.size() == 3 && p2.ppt_all, "3-qubit state not PPT on all cuts");
        RangeCertificate c2 = certify_entangled_by_range(q_state, cfg);
        r.require(c2.range_dim == 4 && c2.entangled, "3-qubit range certificate failed");
    }});

    checks.push_back({13, "double perturbations carry infinite product families",
                      [](Reporter& r, const SearchConfig& cfg) {
        std::vector<Family> fams;
        fams.push_back({FamilyName::SU01});
        fams.push_back({FamilyName::SU04});
        fams.push_back({FamilyName::SV12});
        for (int d = 2; d <= 5; ++d) {
            Family f{FamilyName::SP_0INF};
            f.d = d;
            fams.push_back(f);
        }
        fams.push_back({FamilyName::SP_1INF_3x3});
        fams.push_back({FamilyName::SP_LM_3x3, 3, cd(1.0), cd(2.0)});
        fams.push_back({FamilyName::SP_LM_3x3, 3, cd(1.0), cd(-1.0)});
        fams.push_back({FamilyName::SP_LM_QUBITS3, 3, cd(1.0), cd(2.0)});
        for (const auto& fam : fams) {
            Subspace S = family_space(fam, cfg.tol);
            try {
                EnumerationResult cert = certify_infinite(S, fam, 50, cfg.tol);
                r.require(cert.family_samples.size() == 50, "fewer than 50 samples");
                for (double res : cert.residuals) r.require(res < 1e-8, "residual >= 1e-8");
            } catch (const std::exception& ex) {
                r.require(false, std::string("certificate failed: ") + ex.what());
            }
            EnumerationResult e = enumerate_products(S, cfg);
            r.require(e.infinite && e.likely_infinite, "search did not flag the space infinite");
        }
    }});

    checks.push_back({14, "degree-6 resolvent roots multiply to the cube of the top ratio",
                      [](Reporter& r, const SearchConfig&) {
        cd alpha(2.0, 0.0);
        for (int j = 0; j < 10; ++j) {
            cd beta(1.1 + 0.2 * j, 0.0);
            auto roots = ces::detail::companion_roots(ces::detail::sp_lm_3x3_poly(alpha, beta));
            cd prod(1.0);
            for (cd z : roots) prod *= z;
            cd A = (1.0 + beta * alpha * alpha * alpha * alpha) / (1.0 + beta);
            r.require(std::abs(prod - A * A * A) < 1e-8 * std::abs(A * A * A),
                      "root product != A^3");
        }
    }});

    checks.push_back({15, "property suite: roundtrips, conical rays, PT involution, determinism",
                      [](Reporter& r, const SearchConfig& cfg) {
        std::mt19937_64 rng(cfg.seed + 2000);
        std::normal_distribution<double> g;
        // polynomial roundtrip on 1000 random vectors
        for (int trial = 0; trial < 1000; ++trial) {
            SystemShape s(trial % 2 ? std::vector<int>{3, 3} : std::vector<int>{2, 2, 2});
            VectorXcd amp(s.total_dim());
            for (long f = 0; f < amp.size(); ++f) amp(f) = cd(g(rng), g(rng));
            TensorVector v(s, amp);
            r.require((from_poly(to_poly(v)).amp - v.amp).norm() == 0.0, "roundtrip not exact");
        }
        // every enumerated ray has a conical polynomial form
        for (const char* name : {"U", "SU+0", "SV+1"}) {
            EnumerationResult e =
                enumerate_products(named_space(parse_named_space(name), cfg.tol), cfg);
            for (const auto& ray : e.rays)
                r.require(is_conical(to_poly(ray.to_tensor()), cfg.tol),
                          "enumerated ray not conical");
        }
        // PT involution and trace preservation on 100 random states
        for (int trial = 0; trial < 100; ++trial) {
            SystemShape s(trial % 2 ? std::vector<int>{3, 3} : std::vector<int>{2, 2, 2});
            const long D = s.total_dim();
            MatrixXcd G(D, D);
            for (long a = 0; a < D; ++a)
                for (long b = 0; b < D; ++b) G(a, b) = cd(g(rng), g(rng));
            MatrixXcd m = G * G.adjoint();
            m /= m.trace().real();
            DensityOperator rho(s, m);
            MatrixXcd pt = partial_transpose(rho, {0});
            r.require(std::abs(pt.trace() - m.trace()) < 1e-12, "PT changed the trace");
            r.require((partial_transpose(DensityOperator(s, pt), {0}) - m).norm() < 1e-12,
                      "PT not an involution");
        }
        // determinism under a fixed seed
        SearchConfig cfg2 = cfg;
        cfg2.restarts = std::min(cfg.restarts, 150);
        Subspace U = named_space(parse_named_space("U"), cfg.tol);
        EnumerationResult e1 = enumerate_products(U, cfg2);
        EnumerationResult e2 = enumerate_products(U, cfg2);
        r.require(e1.rays.size() == e2.rays.size(), "nondeterministic ray count");
        for (size_t i = 0; i < e1.rays.size() && i < e2.rays.size(); ++i)
            r.require((e1.rays[i].to_tensor().amp - e2.rays[i].to_tensor().amp).norm() == 0.0,
                      "nondeterministic ray content");
    }});

    return checks;
}

inline std::vector<CheckResult> run_acceptance(const SearchConfig& cfg, std::ostream* log = nullptr) {
    std::vector<CheckResult> results;
    for (const auto& check : acceptance_checks()) {
        detail::Reporter reporter;
        auto t0 = std::chrono::steady_clock::now();
        try {
            check.run(reporter, cfg);
        } catch (const std::exception& ex) {
            reporter.require(false, std::string("exception: ") + ex.what());
        }
        auto t1 = std::chrono::steady_clock::now();
        CheckResult res;
        res.id = check.id;
        res.label = check.label;
        res.pass = reporter.ok;
        res.detail = reporter.first_failure;
        res.seconds = std::chrono::duration<double>(t1 - t0).count();
        if (log) {
            (*log) << "[" << (res.pass ? "PASS" : "FAIL") << "] " << res.id << ". " << res.label;
            if (!res.pass) (*log) << " -- " << res.detail;
            (*log) << "\n";
            log->flush();
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace ces::verify
