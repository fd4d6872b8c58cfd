#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hopfcorr/errors.hpp"
#include "hopfcorr/presets.hpp"

using namespace hopfcorr;

namespace {

PresentationPtr cz() {
    static PresentationPtr p = load_presentation("c-z");
    return p;
}
PresentationPtr cf2() {
    static PresentationPtr p = load_presentation("c-f2");
    return p;
}
PresentationPtr suq2() {
    static PresentationPtr p = load_presentation("suq2?q=1/2");
    return p;
}

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

Cocycle cz_linear(int cutoff = 8) {
    static json j = load_file(data_dir() + "/cocycles/cz-linear.json");
    return cocycle_from_json(j, cz()).with_cutoff(cutoff);
}

Cocycle suq2_seed() {
    static json j = load_file(data_dir() + "/cocycles/suq2-seed.json");
    return cocycle_from_json(j, suq2());
}

} // namespace

TEST_CASE("built-in corep families validate") {
    CHECK(preset_corep_family(cz(), 4).validate().passed());
    CHECK(preset_corep_family(cf2(), 2).validate().passed());
    CHECK(preset_corep_family(load_presentation("u2w"), 2).validate().passed());
    CHECK(preset_corep_family(suq2(), 2).validate().passed());
}

TEST_CASE("matrix functional on c-z powers") {
    CorepFamily F = preset_corep_family(cz(), 4);
    GeneratingFunctional L = functional_from_cocycle(cz_linear());
    MatrixFunctional mf = functional_matrix(L, F);
    for (std::size_t u = 0; u < F.size(); ++u) {
        long n = std::stol(mf.labels[u]);
        CHECK(mf.mats[u].get(0, 0) == q(-(n * n), 2));
        // S-invariant L has hermitian matrices
        CHECK(mf.mats[u].is_hermitian());
    }
    GeneratingFunctional Lz = functional_from_cocycle(Cocycle::zero(cz(), 1, 8));
    for (const auto& m : functional_matrix(Lz, F).mats) CHECK(m.max_abs() == 0.0);
}

TEST_CASE("matrix cocycle Grams") {
    CorepFamily F = preset_corep_family(cz(), 4);
    MatrixCocycle mc = cocycle_matrix(cz_linear(), F);
    for (std::size_t u = 0; u < F.size(); ++u) {
        long n = std::stol(mc.labels[u]);
        CHECK(mc.gram[u].get(0, 0) == q(n * n));
    }
    // zero cocycle: zero matrices
    MatrixCocycle mz = cocycle_matrix(Cocycle::zero(cz(), 1, 8), F);
    for (const auto& m : mz.gram) CHECK(m.max_abs() == 0.0);

    // tree cocycle on group-element coreps: (eta^g)* eta^g = |g|
    Cocycle tree = tree_cocycle(cf2(), 3, 3);
    CorepFamily Ftree = preset_corep_family(cf2(), 3);
    MatrixCocycle mt = cocycle_matrix(tree, Ftree);
    for (std::size_t u = 0; u < Ftree.size(); ++u) {
        long len = mt.labels[u] == "1" ? 0 : long(std::count(mt.labels[u].begin(),
                                                             mt.labels[u].end(), ' ')) + 1;
        CHECK(mt.gram[u].get(0, 0) == q(len));
    }
}

TEST_CASE("qbeta identity") {
    // Kac case degenerates to 2 L^b = -(eta^b)* eta^b
    CorepFamily F = preset_corep_family(cz(), 4);
    Cocycle c = cz_linear();
    GeneratingFunctional L = functional_from_cocycle(c);
    CHECK(qbeta_identity_check(c, L, F).passed());

    // zero cocycle: 0 = 0
    Cocycle z = Cocycle::zero(cz(), 1, 8);
    CHECK(qbeta_identity_check(z, functional_from_cocycle(z), F).passed());

    // suq2, q = 1/2, symmetrized cocycle: exact equality
    Cocycle sym = conjugate_symmetrize(suq2_seed(), 2);
    GeneratingFunctional Ls = functional_from_cocycle(sym, 3);
    CorepFamily Fs = preset_corep_family(suq2(), 2);
    CHECK(qbeta_identity_check(sym, Ls, Fs).passed());

    // frozen entries: (eta^b)* eta^b = 2I and L(a) = -1 for the seed data
    MatrixCocycle mc = cocycle_matrix(sym, Fs);
    CHECK(mc.gram[1].approx_equal(Mat::identity(2, Backend::Exact).scaled(q(2))));
    CHECK(Ls.eval(word_from_string(*suq2(), "a")) == q(-1));
}

TEST_CASE("pinch average") {
    // Q = I leaves the input unchanged
    CorepFamily F = preset_corep_family(cz(), 2);
    GeneratingFunctional L = functional_from_cocycle(cz_linear());
    MatrixFunctional mf = functional_matrix(L, F);
    MatrixFunctional p1 = pinch_average(mf, F);
    for (std::size_t u = 0; u < F.size(); ++u) CHECK(p1.mats[u].approx_equal(mf.mats[u]));

    // Q = diag(2,2,3): pinching zeroes exactly the (1,3),(2,3),(3,1),(3,2) blocks
    Corep synth;
    synth.label = "synthetic";
    synth.dim = 3;
    for (int i = 0; i < 9; ++i) synth.entries.push_back(NCPoly::unit(Backend::Exact));
    synth.q = {q(2), q(2), q(3)};
    CorepFamily Fsynth(cz(), {synth});
    MatrixFunctional dense;
    dense.labels = {"synthetic"};
    Mat m(3, 3, Backend::Exact);
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) m.set(i, j, q(10 * i + j + 1));
    dense.mats = {m};
    MatrixFunctional pinched = pinch_average(dense, Fsynth);
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) {
            bool coupled = (i < 2) == (j < 2);
            CHECK(pinched.mats[0].get(i, j) == (coupled ? m.get(i, j) : q(0)));
        }
    // idempotent
    MatrixFunctional twice = pinch_average(pinched, Fsynth);
    CHECK(twice.mats[0].approx_equal(pinched.mats[0]));
    // commutes with hermitian conjugation
    MatrixFunctional dense_adj;
    dense_adj.labels = dense.labels;
    dense_adj.mats = {m.adjoint()};
    CHECK(pinch_average(dense_adj, Fsynth).mats[0].approx_equal(pinched.mats[0].adjoint()));

    // suq2: off-diagonal zeroed, and 2 L~ = -sum P (eta* eta) P per corep
    Cocycle sym = conjugate_symmetrize(suq2_seed(), 2);
    GeneratingFunctional Ls = functional_from_cocycle(sym, 3);
    CorepFamily Fs = preset_corep_family(suq2(), 2);
    MatrixFunctional lf = functional_matrix(Ls, Fs);
    MatrixFunctional lp = pinch_average(lf, Fs);
    MatrixCocycle mc = cocycle_matrix(sym, Fs);
    for (std::size_t u = 0; u < Fs.size(); ++u) {
        const Corep& U = Fs.coreps()[u];
        CHECK(lp.mats[u].is_hermitian());
        Mat rhs(U.dim, U.dim, Backend::Exact);
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j)
                if (U.q[i] == U.q[j]) rhs.set(i, j, mc.gram[u].get(i, j));
        CHECK(lp.mats[u].scaled(q(2)).approx_equal(rhs.scaled(q(-1))));
        if (U.dim == 2) {
            CHECK(lp.mats[u].get(0, 1).is_zero());
            CHECK(lp.mats[u].get(1, 0).is_zero());
        }
    }
}

TEST_CASE("properness") {
    // tree cocycle, small horizon: exceptional set = short words
    Cocycle tree = tree_cocycle(cf2(), 3, 3);
    CorepFamily F = preset_corep_family(cf2(), 3);
    PropernessResult res = properness_check(tree, F, q(2));
    CHECK(res.report.passed());
    for (const auto& label : res.exceptional) {
        long len = label == "1" ? 0 : long(std::count(label.begin(), label.end(), ' ')) + 1;
        CHECK(len <= 1); // fails (eta^g)* eta^g >= 2 exactly when |g| < 2
    }
    CHECK(res.exceptional.size() == 5);

    // zero cocycle: everything exceptional, not proper at the horizon
    PropernessResult zres = properness_check(Cocycle::zero(cf2(), 1, 3), F, q(1));
    CHECK(!zres.report.passed());
    CHECK(zres.exceptional.size() == F.size());

    // functional form on c-z: L(u^n) = -n^2/2, M = 2 fails exactly |n| <= 1
    CorepFamily Fz = preset_corep_family(cz(), 8);
    GeneratingFunctional L = functional_from_cocycle(cz_linear());
    PropernessResult fres = properness_check(L, Fz, q(2));
    CHECK(fres.report.passed());
    std::vector<std::string> expect = {"-1", "0", "1"};
    CHECK(fres.exceptional == expect);
}

TEST_CASE("conjugate symmetrization") {
    // zero cocycle: doubled zero cocycle
    Cocycle z = Cocycle::zero(cz(), 2, 6);
    Cocycle zs = conjugate_symmetrize(z, 2);
    CHECK(zs.dim() == 4);
    for (const auto& v : zs.eta_images()) CHECK(v.is_zero());

    // Kac case: eta-bar(u^n) = conj eta(S(u^-n)) = eta(u^n); doubled and real
    Cocycle c = cz_linear(6);
    Report rep;
    CorepFamily F = preset_corep_family(cz(), 3);
    Cocycle sym = conjugate_symmetrize(c, 3, &F, &rep);
    CHECK(rep.passed());
    CHECK(sym.dim() == 2);
    for (int n = 1; n <= 3; ++n) {
        Vec v = sym.eta(Word(std::size_t(n), cz()->generator_index("u")));
        CHECK(v.get(0) == q(n));
        CHECK(v.get(1) == q(n));
    }

    // suq2: the symmetrized cocycle is tau_{i/2}-real within exact arithmetic
    CorepFamily Fs = preset_corep_family(suq2(), 2);
    Report rs;
    Cocycle ss = conjugate_symmetrize(suq2_seed(), 2, &Fs, &rs);
    CHECK(rs.passed());
    CHECK(ss.dim() == 4);
}

TEST_CASE("symmetrization needs rational scaling square roots on the exact backend") {
    // a scaling group with tau(g) = 2 has no exact tau_{i/2}
    auto& P = *cz();
    std::vector<Scalar> tau = {Scalar::exact(2), Scalar::exact(mpq_class(1, 2))};
    auto odd = std::make_shared<Presentation>("c-z-odd-tau", P.backend(), P.generators(),
                                              P.rewrite_system(), P.delta_images(),
                                              P.epsilon_images(), P.antipode_images(),
                                              P.alpha_scalings(), tau);
    Cocycle c = cz_linear(4).with_presentation(odd);
    CHECK_THROWS_AS(conjugate_symmetrize(c, 1), IrrationalPower);
}

TEST_CASE("symmetrization never decreases the eta Gram in the PSD order") {
    CorepFamily F = preset_corep_family(cf2(), 2);
    Cocycle tree = tree_cocycle(cf2(), 2, 2);
    Report rep;
    Cocycle sym = conjugate_symmetrize(tree, 1, &F, &rep);
    CHECK(rep.passed()); // the per-corep monotonicity check lives in the report
    MatrixCocycle before = cocycle_matrix(tree, F);
    MatrixCocycle after = cocycle_matrix(sym, F);
    for (std::size_t u = 0; u < F.size(); ++u)
        CHECK(ldlt_psd(after.gram[u] - before.gram[u]).psd);
}

TEST_CASE("tau reality transfer on the symmetrized suq2 cocycle") {
    // the seed data is supported on the scaling-fixed subalgebra, so the
    // symmetrized cocycle is plainly real (t = 0), and the corollary
    // transfers reality to s = 1
    Cocycle sym = conjugate_symmetrize(suq2_seed(), 2);
    Report r = tau_reality_transfer(sym, 0, 1, 2);
    INFO(r.summary());
    CHECK(r.passed());
    CHECK_THROWS_AS(tau_reality_transfer(sym, mpq_class(1, 2), 1, 2), HypothesisViolated);
}

TEST_CASE("float backend end to end") {
    Tolerance saved = tolerance();
    tolerance().eps_num = 1e-9;
    PresentationPtr Sf = load_presentation("suq2?q=0.3");
    CHECK(Sf->backend() == Backend::Float);
    json j = load_file(data_dir() + "/cocycles/suq2-seed.json");
    j["presentation"] = "suq2";
    Cocycle seed = cocycle_from_json(j, Sf);
    Cocycle sym = conjugate_symmetrize(seed, 2);
    GeneratingFunctional L = functional_from_cocycle(sym, 2);
    Report rt = roundtrip_check(L);
    INFO(rt.summary());
    CHECK(rt.passed());
    CHECK(rt.worst_residual() <= 1e-8);
    tolerance() = saved;
}
