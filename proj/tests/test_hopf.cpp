#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

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
PresentationPtr u2w() {
    static PresentationPtr p = load_presentation("u2w");
    return p;
}
PresentationPtr suq2() {
    static PresentationPtr p = load_presentation("suq2?q=1/2");
    return p;
}

Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }

NCPoly word_poly(const Presentation& P, const std::string& s) {
    return NCPoly::monomial(Scalar::one(P.backend()), word_from_string(P, s));
}

} // namespace

TEST_CASE("coproduct") {
    auto& P = *cz();
    CHECK(P.delta(P.unit()).approx_equal(Tensor2::unit(P.backend())));
    // group-like powers
    Tensor2 expect(P.backend());
    expect.add_term({word_from_string(P, "u u u"), word_from_string(P, "u u u")}, q(1));
    CHECK(P.delta(word_poly(P, "u u u")).approx_equal(expect));

    // suq2: Delta(a) = a x a + (-q c*) x c
    auto& S = *suq2();
    Tensor2 da(S.backend());
    da.add_term({word_from_string(S, "a"), word_from_string(S, "a")}, q(1));
    da.add_term({word_from_string(S, "c*"), word_from_string(S, "c")}, q(-1, 2));
    CHECK(S.delta(word_poly(S, "a")).approx_equal(da));
}

TEST_CASE("triple coproduct and coassociativity") {
    auto& P = *cz();
    Tensor3 u3(P.backend());
    u3.add_term({word_from_string(P, "u"), word_from_string(P, "u"), word_from_string(P, "u")},
                q(1));
    CHECK(P.delta2(word_poly(P, "u")).approx_equal(u3));
    Tensor3 unit3 = Tensor3::unit(P.backend());
    CHECK(P.delta2(P.unit()).approx_equal(unit3));
    // both bracketings agree on suq2 generators (delta2 throws otherwise)
    auto& S = *suq2();
    for (const auto& g : {"c", "c*", "a", "a*"}) CHECK_NOTHROW(S.delta2(word_poly(S, g)));
}

TEST_CASE("counit") {
    auto& P = *cz();
    CHECK(P.epsilon(P.unit()) == Scalar::one(P.backend()));
    auto& S = *suq2();
    CHECK(S.epsilon(word_poly(S, "a")) == Scalar::one(S.backend()));
    CHECK(S.epsilon(word_poly(S, "c")).is_zero());
    auto& F = *cf2();
    for (const auto& w : F.basis_words(3))
        CHECK(F.epsilon(w) == Scalar::one(F.backend()));
}

TEST_CASE("antipode") {
    auto& P = *cz();
    CHECK(P.antipode(P.unit()).approx_equal(P.unit()));
    CHECK(P.antipode(word_poly(P, "u u u")).approx_equal(word_poly(P, "u* u* u*")));

    // m(S x id)Delta(c) = eps(c) 1 = 0 on suq2
    auto& S = *suq2();
    Tensor2 dc = S.delta(word_poly(S, "c"));
    NCPoly acc(S.backend());
    for (const auto& [k, c] : dc.terms())
        acc = acc + S.mul(S.antipode(NCPoly::monomial(c, k[0])),
                          NCPoly::monomial(Scalar::one(S.backend()), k[1]));
    CHECK(S.normal_form(acc).is_zero());
}

TEST_CASE("alpha action") {
    auto& S = *suq2();
    CHECK(S.alpha_apply(S.unit()).approx_equal(S.unit()));
    // u2w: alpha(U_12) = (q1/q2) U_12 = 2 U_12 with U_12 = -b* d
    auto& U = *u2w();
    NCPoly u12 = word_poly(U, "b* d").scaled(q(-1));
    CHECK(U.alpha_apply(u12).approx_equal(u12.scaled(q(2))));

    // alpha^{-1} o alpha = id on random elements of degree <= 4
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> gen(0, int(S.generator_count()) - 1);
    std::uniform_int_distribution<int> len(0, 4);
    for (int t = 0; t < 30; ++t) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(Gen(gen(rng)));
        NCPoly p = S.normal_form(NCPoly::monomial(q(1), w));
        CHECK(S.alpha_apply(S.alpha_apply(p), -1).approx_equal(p));
    }
}

TEST_CASE("twisted antipode") {
    auto& S = *suq2();
    CHECK(S.twisted_antipode(S.unit()).approx_equal(S.unit()));
    // alpha = id reduces S_alpha to S
    auto Pid = S.with_alpha(std::vector<Scalar>(S.generator_count(), q(1)));
    for (const auto& g : {"c", "a"})
        CHECK(Pid->twisted_antipode(word_poly(S, g)).approx_equal(S.antipode(word_poly(S, g))));

    // twisted antipode relation S_a(w_(1)) alpha(w_(2)) = eps(w) 1 on generators
    for (std::size_t gi = 0; gi < S.generator_count(); ++gi) {
        NCPoly pg = S.gen_poly(Gen(gi));
        Tensor2 d = S.delta(pg);
        NCPoly acc(S.backend());
        for (const auto& [k, c] : d.terms())
            acc = acc + S.mul(S.twisted_antipode(NCPoly::monomial(c, k[0])),
                              S.alpha_apply(NCPoly::monomial(q(1), k[1])));
        NCPoly target = NCPoly::monomial(S.epsilon_images()[gi], unit_word());
        CHECK(S.normal_form(acc).approx_equal(target));
    }
}

TEST_CASE("gamma inverse") {
    auto& P = *cz(); // alpha = id
    NCPoly w = word_poly(P, "u u");
    CHECK(P.gamma_inverse(w).approx_equal(w.scaled(q(1, 2))));
    CHECK(P.gamma_inverse(P.unit()).approx_equal(P.unit().scaled(q(1, 2))));
    CHECK(P.gamma_apply(P.gamma_inverse(w)).approx_equal(w));

    // u2w: gamma^{-1}(U_12) = (1/3) U_12
    auto& U = *u2w();
    NCPoly u12 = word_poly(U, "b* d").scaled(q(-1));
    CHECK(U.gamma_inverse(u12).approx_equal(u12.scaled(q(1, 3))));

    // signed scaling makes gamma singular
    auto bad = P.with_alpha({q(-1), q(-1)});
    CHECK_THROWS_AS(bad->gamma_inverse(word_poly(P, "u")), SingularGamma);
}

TEST_CASE("hopf axiom suite passes on all four presets") {
    for (auto Pp : {cz(), cf2(), u2w(), suq2()}) {
        Report r = Pp->verify_hopf_axioms(3);
        INFO(Pp->name(), ": ", r.summary());
        CHECK(r.passed());
    }
}

TEST_CASE("wrong antipode is caught") {
    // S(u) = u on c-z violates the antipode relation: S(u) u = u^2 != 1
    auto& P = *cz();
    std::vector<NCPoly> wrong = {word_poly(P, "u"), word_poly(P, "u*")};
    Presentation broken("c-z-broken", P.backend(), P.generators(), P.rewrite_system(),
                        P.delta_images(), P.epsilon_images(), wrong, P.alpha_scalings(),
                        P.tau_scalings());
    Report r = broken.verify_hopf_axioms(2);
    CHECK(!r.passed());
    bool antipode_failed = false;
    for (const auto& c : r.checks())
        if (!c.pass && c.name.find("antipode relation") != std::string::npos)
            antipode_failed = true;
    CHECK(antipode_failed);
}

TEST_CASE("delta2 flags a corrupted coproduct") {
    // break coassociativity: Delta(u) = u (x) u^2
    auto& P = *cz();
    std::vector<Tensor2> wrong = P.delta_images();
    Tensor2 bad(P.backend());
    bad.add_term({word_from_string(P, "u"), word_from_string(P, "u u")}, q(1));
    wrong[P.generator_index("u")] = bad;
    Presentation broken("c-z-broken", P.backend(), P.generators(), P.rewrite_system(), wrong,
                        P.epsilon_images(), P.antipode_images(), P.alpha_scalings(),
                        P.tau_scalings());
    CHECK_THROWS_AS(broken.delta2(word_poly(P, "u")), CoassociativityViolation);
}

TEST_CASE("admissibility suite") {
    for (auto Pp : {cz(), cf2(), u2w(), suq2()}) {
        Report r = Pp->verify_admissible();
        INFO(Pp->name(), ": ", r.summary());
        CHECK(r.passed());
    }
    // alpha = id passes on every preset
    for (auto Pp : {cz(), cf2(), u2w(), suq2()}) {
        auto Pid = Pp->with_alpha(
            std::vector<Scalar>(Pp->generator_count(), Scalar::one(Pp->backend())));
        CHECK(Pid->verify_admissible().passed());
    }
}

TEST_CASE("signed order-two scaling fails condition (iv) with the eigenvalue witness") {
    auto bad = cz()->with_alpha({q(-1), q(-1)});
    Report r = bad->verify_admissible();
    CHECK(!r.passed());
    bool found = false;
    for (const auto& c : r.checks())
        if (!c.pass && c.name.find("(iv)") != std::string::npos &&
            c.witness.find("1+(-1)=0") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("twisted antipode involution on words of degree <= 3") {
    for (auto Pp : {cz(), suq2(), u2w()}) {
        for (const auto& w : Pp->basis_words(3)) {
            NCPoly pw = NCPoly::monomial(Scalar::one(Pp->backend()), w);
            NCPoly tw = Pp->star(Pp->twisted_antipode(Pp->star(Pp->twisted_antipode(pw))));
            CHECK(tw.approx_equal(pw));
        }
    }
}

TEST_CASE("twisted antipode relation holds on all words of degree <= 3") {
    for (auto Pp : {cz(), u2w(), suq2()}) {
        const Presentation& P = *Pp;
        for (const auto& w : P.basis_words(3)) {
            NCPoly pw = NCPoly::monomial(Scalar::one(P.backend()), w);
            Tensor2 d = P.delta(pw);
            NCPoly acc1(P.backend()), acc2(P.backend());
            for (const auto& [k, c] : d.terms()) {
                acc1 = acc1 + P.mul(P.twisted_antipode(NCPoly::monomial(c, k[0])),
                                    P.alpha_apply(NCPoly::monomial(Scalar::one(P.backend()), k[1])));
                acc2 = acc2 + P.mul(P.alpha_apply(NCPoly::monomial(c, k[0])),
                                    P.twisted_antipode(NCPoly::monomial(Scalar::one(P.backend()), k[1])));
            }
            NCPoly target = NCPoly::monomial(P.epsilon(w), unit_word());
            CHECK(P.normal_form(acc1).approx_equal(target));
            CHECK(P.normal_form(acc2).approx_equal(target));
        }
    }
}

TEST_CASE("normal_form commutes with alpha on raw words of degree <= 5") {
    auto& S = *suq2();
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> gen(0, 3);
    for (int t = 0; t < 60; ++t) {
        Word w;
        for (int i = 0; i < 5; ++i) w.push_back(Gen(gen(rng)));
        NCPoly raw = NCPoly::monomial(q(1), w);
        // alpha of a raw monomial scales by the (rule-homogeneous) eigenvalue
        NCPoly left = S.normal_form(raw.scaled(S.alpha_eigenvalue(w)));
        NCPoly right = S.alpha_apply(S.normal_form(raw));
        CHECK(left.approx_equal(right));
    }
}

TEST_CASE("sweedler expansion sums back to the coproduct") {
    auto& S = *suq2();
    NCPoly p = word_poly(S, "c a");
    Tensor2 d = S.delta(p);
    SweedlerExpansion sw = S.sweedler(p);
    Tensor2 rebuilt(S.backend());
    for (const auto& t : sw) rebuilt.add_term({t.leg1, t.leg2}, t.coeff);
    CHECK(rebuilt.approx_equal(d));
}
