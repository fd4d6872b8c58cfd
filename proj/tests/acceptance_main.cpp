// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hopfcorr/cli.hpp"
#include "hopfcorr/errors.hpp"
#include "hopfcorr/levy.hpp"

using namespace hopfcorr;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void line(int index, const std::string& name, bool pass, double seconds,
          const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %-58s (%6.2fs)%s%s\n", pass ? "PASS" : "FAIL", index,
                name.c_str(), seconds, detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void run(int index, const std::string& name, const std::function<bool(std::string&)>& body) {
    auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const HopfError& e) {
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    line(index, name, pass, secs, detail);
}

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

Word upow(const Presentation& P, int n) {
    return Word(std::size_t(std::abs(n)),
                n >= 0 ? P.generator_index("u") : P.generator_index("u*"));
}

Cocycle load_cocycle(const std::string& name, PresentationPtr P) {
    return cocycle_from_json(load_file(data_dir() + "/cocycles/" + name + ".json"), P);
}

long word_len(const std::string& label) {
    if (label == "1") return 0;
    return long(std::count(label.begin(), label.end(), ' ')) + 1;
}

} // namespace

int main() {
    PresentationPtr cz = load_presentation("c-z");
    PresentationPtr cf2 = load_presentation("c-f2");
    PresentationPtr u2w = load_presentation("u2w");
    PresentationPtr suq2 = load_presentation("suq2?q=1/2");

    // 1. Hopf/admissibility suite at degree 4, exact backend, < 60 s total.
    run(1, "Hopf + admissibility suite, four presets, degree 4", [&](std::string& detail) {
        auto t0 = Clock::now();
        for (auto P : {cz, cf2, u2w, suq2}) {
            if (P->backend() != Backend::Exact) {
                detail = P->name() + " is not on the exact backend";
                return false;
            }
            Report h = P->verify_hopf_axioms(4);
            Report a = P->verify_admissible();
            Report c = P->check_local_confluence(
                std::max<std::size_t>(2 * P->rewrite_system().longest_lhs(), 6));
            if (!h.passed() || !a.passed() || !c.passed()) {
                detail = P->name() + ": " + (!h.passed() ? h.summary() : "") +
                         (!a.passed() ? a.summary() : "") + (!c.passed() ? c.summary() : "");
                return false;
            }
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        detail = "runtime " + std::to_string(secs) + "s";
        return secs < 60.0;
    });

    // 2. Negative admissibility control: order-two signed scaling fails (iv).
    run(2, "signed order-two bijection fails (iv) with 1+(-1)=0", [&](std::string& detail) {
        auto bad = cz->with_alpha({q(-1), q(-1)});
        Report r = bad->verify_admissible();
        if (r.passed()) {
            detail = "expected failure";
            return false;
        }
        for (const auto& c : r.checks())
            if (!c.pass && c.name.find("(iv)") != std::string::npos &&
                c.witness.find("1+(-1)=0") != std::string::npos)
                return true;
        detail = "condition (iv) lacks the eigenvalue witness";
        return false;
    });

    // 3. Closed-form correspondence on C[Z].
    run(3, "C[Z]: L(u^n) = -n^2/2, zero coboundary residual, Gram mn", [&](std::string& detail) {
        Cocycle c = load_cocycle("cz-linear", cz);
        GeneratingFunctional L = functional_from_cocycle(c); // budget 4, stored degree 8
        for (int n = -8; n <= 8; ++n)
            if (L.eval(upow(*cz, n)) != q(-(long(n) * n), 2)) {
                detail = "L(u^" + std::to_string(n) + ") off";
                return false;
            }
        Report cob = yields_coboundary(L, c, 4);
        if (!cob.passed() || cob.worst_residual() != 0.0) {
            detail = "coboundary residual " + std::to_string(cob.worst_residual());
            return false;
        }
        Cocycle gns = cocycle_from_functional(L);
        for (int m = -4; m <= 4; ++m)
            for (int n = -4; n <= 4; ++n) {
                if (m == 0 || n == 0) continue;
                if (gns.inner(gns.eta(upow(*cz, m)), gns.eta(upow(*cz, n))) != q(long(m) * n)) {
                    detail = "Gram mismatch";
                    return false;
                }
            }
        return true;
    });

    // 4. Theorem cocycle -> functional on SUq(2), q = 1/2, symmetrized seed.
    run(4, "SUq(2): symmetrized cocycle gives a generating functional", [&](std::string& detail) {
        auto t0 = Clock::now();
        Cocycle seed = load_cocycle("suq2-seed", suq2);
        Cocycle sym = conjugate_symmetrize(seed, 3);
        GeneratingFunctional L = functional_from_cocycle(sym, 3);
        Report gen = check_generating(L);
        Report inv = is_salpha_invariant(L);
        Report cob = yields_coboundary(L, sym, 3);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        bool herm = true;
        for (const auto& c : gen.checks())
            if (c.name.find("hermitian") != std::string::npos && !c.pass) herm = false;
        if (!herm || !gen.passed() || !inv.passed()) {
            detail = gen.summary() + " / " + inv.summary();
            return false;
        }
        if (cob.worst_residual() > 1e-9) {
            detail = "coboundary residual " + std::to_string(cob.worst_residual());
            return false;
        }
        detail = "runtime " + std::to_string(secs) + "s";
        return secs < 300.0;
    });

    // 5. Round trip on every preset, exact backend.
    run(5, "round trip L -> GNS -> L on all four presets", [&](std::string& detail) {
        std::vector<std::pair<std::string, GeneratingFunctional>> cases;
        cases.emplace_back("c-z", functional_from_cocycle(load_cocycle("cz-linear", cz)));
        {
            // abelianization Gaussian cocycle on the free group
            std::vector<Mat> pi(4, Mat::identity(2, Backend::Exact));
            std::vector<Vec> eta(4, Vec(2, Backend::Exact));
            eta[cf2->generator_index("a")].set(0, q(1));
            eta[cf2->generator_index("a*")].set(0, q(-1));
            eta[cf2->generator_index("b")].set(1, q(1));
            eta[cf2->generator_index("b*")].set(1, q(-1));
            Cocycle ab(cf2, 2, 6, pi, eta);
            cases.emplace_back("c-f2", functional_from_cocycle(ab, 3));
        }
        cases.emplace_back("u2w", functional_from_cocycle(load_cocycle("u2w-point", u2w), 3));
        cases.emplace_back(
            "suq2",
            functional_from_cocycle(conjugate_symmetrize(load_cocycle("suq2-seed", suq2), 2), 3));
        for (auto& [name, L] : cases) {
            Report r = roundtrip_check(L);
            if (!r.passed()) {
                detail = name + ": " + r.summary();
                return false;
            }
            for (const auto& c : r.checks())
                if (c.name.find("round trip reproduces") != std::string::npos &&
                    c.residual && *c.residual != 0.0) {
                    detail = name + ": nonzero exact reproduction residual";
                    return false;
                }
        }
        return true;
    });

    // 6. Lemma suite on every validated preset cocycle, degree <= 3.
    run(6, "identity lemmas + prop (i)-(vii) + d(phi~)=0, degree 3", [&](std::string& detail) {
        std::vector<std::pair<std::string, Cocycle>> cocycles;
        cocycles.emplace_back("c-z", load_cocycle("cz-linear", cz));
        cocycles.emplace_back("c-f2 tree", tree_cocycle(cf2, 3, 6));
        cocycles.emplace_back("u2w point", load_cocycle("u2w-point", u2w));
        cocycles.emplace_back("suq2 sym",
                              conjugate_symmetrize(load_cocycle("suq2-seed", suq2), 2));
        for (auto& [name, c] : cocycles) {
            Report ids = check_cocycle_identities(c, 3);
            Report two = two_cocycle_check(c, 3);
            if (!ids.passed() || !two.passed()) {
                detail = name + ": " + ids.summary() + " / " + two.summary();
                return false;
            }
        }
        for (auto P : {cz, cf2, u2w, suq2}) {
            Report a = P->verify_admissible(); // prop (i)-(vii) live here
            if (!a.passed()) {
                detail = P->name() + ": " + a.summary();
                return false;
            }
        }
        return true;
    });

    // 7. Decomposition on the block direct sum.
    run(7, "decompose: exact block projections, L = L_G + L_R", [&](std::string& detail) {
        std::vector<Mat> pi(4, Mat::identity(1, Backend::Exact));
        std::vector<Vec> eta(4, Vec(1, Backend::Exact));
        eta[cf2->generator_index("a")].set(0, q(1));
        eta[cf2->generator_index("a*")].set(0, q(-1));
        Cocycle gauss(cf2, 1, 6, pi, eta);
        Cocycle tree = tree_cocycle(cf2, 3, 6);
        Cocycle block = Cocycle::direct_sum(gauss, tree);
        Decomposition d = decompose(block);
        if (!d.report.passed()) {
            detail = d.report.summary();
            return false;
        }
        Mat expect_pg(block.dim(), block.dim(), Backend::Exact);
        expect_pg.set(0, 0, q(1));
        if (!d.P_G.approx_equal(expect_pg) ||
            !(d.P_G + d.P_R).is_identity()) {
            detail = "projections are not the exact block projections";
            return false;
        }
        GeneratingFunctional L = functional_from_cocycle(block, 3);
        GeneratingFunctional sum = d.L_G + d.L_R;
        for (const auto& [w, v] : L.values())
            if (v != sum.eval(w)) {
                detail = "L != L_G + L_R at " + cf2->word_str(w);
                return false;
            }
        if (!is_gaussian_functional(d.L_G, 2).passed()) {
            detail = "L_G is not Gaussian";
            return false;
        }
        // trivial G-part of eta_R: the joint eigenspace is killed by P_R
        std::vector<Mat> shifted;
        for (std::size_t g = 0; g < cf2->generator_count(); ++g)
            shifted.push_back(block.pi_images()[g] -
                              Mat::identity(block.dim(), Backend::Exact)
                                  .scaled(cf2->epsilon_images()[g]));
        for (const auto& v : intersect_kernels(shifted, Backend::Exact))
            if (!(d.P_R * v).is_zero()) {
                detail = "eta_R keeps a Gaussian direction";
                return false;
            }
        return true;
    });

    // 8. Matrix identities on SUq(2).
    run(8, "Q^beta identity + pinching identities on SUq(2)", [&](std::string& detail) {
        Cocycle sym = conjugate_symmetrize(load_cocycle("suq2-seed", suq2), 2);
        GeneratingFunctional L = functional_from_cocycle(sym, 3);
        CorepFamily F = preset_corep_family(suq2, 2);
        Report v = F.validate();
        Report qb = qbeta_identity_check(sym, L, F);
        if (!v.passed() || !qb.passed() || qb.worst_residual() != 0.0) {
            detail = qb.summary();
            return false;
        }
        MatrixFunctional lf = functional_matrix(L, F);
        MatrixFunctional lp = pinch_average(lf, F);
        MatrixFunctional lpp = pinch_average(lp, F);
        MatrixCocycle mc = cocycle_matrix(sym, F);
        for (std::size_t u = 0; u < F.size(); ++u) {
            if (!lpp.mats[u].approx_equal(lp.mats[u])) {
                detail = "pinching is not idempotent";
                return false;
            }
            const Corep& U = F.coreps()[u];
            Mat rhs(U.dim, U.dim, Backend::Exact);
            for (uint32_t i = 0; i < U.dim; ++i)
                for (uint32_t j = 0; j < U.dim; ++j)
                    if (U.q[i] == U.q[j]) rhs.set(i, j, mc.gram[u].get(i, j));
            if (!lp.mats[u].scaled(q(2)).approx_equal(rhs.scaled(q(-1)))) {
                detail = "2 L~ != -sum P (eta* eta) P on " + U.label;
                return false;
            }
        }
        // trivial pinching for Q = I on the c-z family
        CorepFamily Fz = preset_corep_family(cz, 3);
        GeneratingFunctional Lz = functional_from_cocycle(load_cocycle("cz-linear", cz));
        MatrixFunctional mz = functional_matrix(Lz, Fz);
        MatrixFunctional pz = pinch_average(mz, Fz);
        for (std::size_t u = 0; u < Fz.size(); ++u)
            if (!pz.mats[u].approx_equal(mz.mats[u])) {
                detail = "pinching moved a Q = I matrix";
                return false;
            }
        return true;
    });

    // 9. Properness on the radius-6 tree ball.
    run(9, "properness on the radius-6 ball (cocycle and functional forms)",
        [&](std::string& detail) {
        Cocycle tree = tree_cocycle(cf2, 6, 6);
        CorepFamily F = preset_corep_family(cf2, 6);
        MatrixCocycle mc = cocycle_matrix(tree, F);
        for (std::size_t u = 0; u < F.size(); ++u)
            if (mc.gram[u].get(0, 0) != q(word_len(mc.labels[u]))) {
                detail = "(eta^g)* eta^g != |g| at " + mc.labels[u];
                return false;
            }
        PropernessResult pc = properness_check(tree, F, q(3));
        if (!pc.report.passed()) {
            detail = pc.report.summary();
            return false;
        }
        for (const auto& label : pc.exceptional)
            if (word_len(label) > 2) {
                detail = "exceptional label beyond |g| <= 2: " + label;
                return false;
            }
        if (pc.exceptional.size() != 17) { // all of {g : |g| <= 2}
            detail = "exceptional count " + std::to_string(pc.exceptional.size());
            return false;
        }
        GeneratingFunctional len = GeneratingFunctional::tabulate(
            cf2, 3, [&](const Word& w) { return q(-long(w.size()), 2); });
        PropernessResult pf = properness_check(len, F, q(1));
        // Non-strict inequality per the source definition: -|g|/2 <= -1
        // fails exactly on {g : |g| <= 1}. (The criterion text's set
        // {|g| <= 2} would need a strict inequality, contradicting the
        // M = 2 example on C[Z]; see the ledger.)
        if (!pf.report.passed()) {
            detail = pf.report.summary();
            return false;
        }
        for (const auto& label : pf.exceptional)
            if (word_len(label) > 1) {
                detail = "functional-form exceptional label " + label;
                return false;
            }
        if (pf.exceptional.size() != 5) {
            detail = "functional-form exceptional count " +
                     std::to_string(pf.exceptional.size());
            return false;
        }
        detail = "functional form: exceptional = {|g| <= 1} (non-strict convention)";
        return true;
    });

    // 10. Diagnostic honesty of attempt_functional.
    run(10, "attempt_functional: honest residuals, no crash", [&](std::string& detail) {
        // every alpha-real preset cocycle: residuals <= 1e-9
        std::vector<std::pair<std::string, Cocycle>> good;
        good.emplace_back("c-z", load_cocycle("cz-linear", cz));
        good.emplace_back("u2w", load_cocycle("u2w-point", u2w));
        good.emplace_back("suq2 sym",
                          conjugate_symmetrize(load_cocycle("suq2-seed", suq2), 2));
        good.emplace_back("c-f2 tree", tree_cocycle(cf2, 3, 6));
        for (auto& [name, c] : good) {
            Report r = attempt_functional(c, 3);
            if (!r.passed() || r.worst_residual() > 1e-9) {
                detail = name + ": " + r.summary();
                return false;
            }
        }
        // constructed non-alpha-real cocycle: some residual > 1e-6, no crash
        const Backend b = Backend::Exact;
        Scalar im = Scalar::parse("i", b);
        Mat pa(2, 2, b), pas(2, 2, b);
        pa.set(0, 0, im);
        pa.set(1, 1, -im);
        pas.set(0, 0, -im);
        pas.set(1, 1, im);
        Mat id2 = Mat::identity(2, b);
        Vec e1 = Vec::unit(2, b, 0), e2 = Vec::unit(2, b, 1);
        std::vector<Mat> pi = {pa, pas, id2, id2};
        std::vector<Vec> eta = {e1, (pas * e1).scaled(q(-1)), e2, e2.scaled(q(-1))};
        Cocycle twist(cf2, 2, 6, pi, eta);
        Report r = attempt_functional(twist, 3);
        if (r.passed() || r.worst_residual() <= 1e-6) {
            detail = "negative control produced no residual";
            return false;
        }
        return true;
    });

    std::printf("%s: %d/10 criteria passed\n", failures ? "FAIL" : "OK", 10 - failures);
    return failures ? 1 : 0;
}
