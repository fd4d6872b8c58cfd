#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cctype>

#include "hopfcorr/errors.hpp"
#include "hopfcorr/levy.hpp"
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

// abelianization Gaussian cocycle on c-f2: trivial pi, eta = exponent sums
Cocycle f2_abelian(int cutoff = 6) {
    const Backend b = Backend::Exact;
    std::vector<Mat> pi(4, Mat::identity(1, b));
    std::vector<Vec> eta(4, Vec(1, b));
    eta[cf2()->generator_index("a")].set(0, q(1));
    eta[cf2()->generator_index("a*")].set(0, q(-1));
    return Cocycle(cf2(), 1, cutoff, pi, eta);
}

Cocycle suq2_symmetrized() {
    json j = load_file(data_dir() + "/cocycles/suq2-seed.json");
    Cocycle seed = cocycle_from_json(j, suq2());
    return conjugate_symmetrize(seed, 2);
}

} // namespace

TEST_CASE("decompose: trivial-pi cocycle on c-z is entirely Gaussian") {
    Decomposition d = decompose(cz_linear());
    CHECK(d.report.passed());
    CHECK(d.P_G.is_identity());
    CHECK(d.P_R.max_abs() == 0.0);
    for (const auto& [w, v] : d.L_R.values()) CHECK(v.is_zero());
    CHECK(is_gaussian_functional(d.L_G, 3).passed());
    // eta = eta_G + eta_R pointwise and the parts are orthogonal
    Cocycle c = cz_linear();
    for (const auto& w : cz()->basis_words(3)) {
        Vec sum = d.eta_G.eta(w) + d.eta_R.eta(w);
        CHECK(Vec::approx_equal(sum, c.eta(w)));
    }
}

TEST_CASE("decompose: tree cocycle is purely non-Gaussian") {
    Cocycle tree = tree_cocycle(cf2(), 3, 6);
    CHECK(check_cocycle_welldefined(tree).passed());
    Decomposition d = decompose(tree);
    CHECK(d.report.passed());
    CHECK(d.P_G.max_abs() == 0.0);
    CHECK(d.P_R.is_identity());
    for (const auto& [w, v] : d.L_G.values()) CHECK(v.is_zero());
    CHECK(check_parts_alpha_real(d, 2).passed());
}

TEST_CASE("decompose: block direct sum separates into the block projections") {
    Cocycle gauss = f2_abelian(6);
    Cocycle tree = tree_cocycle(cf2(), 3, 6);
    Cocycle block = Cocycle::direct_sum(gauss, tree);
    Decomposition d = decompose(block);
    CHECK(d.report.passed());

    // exact block projections
    Mat expect_pg(block.dim(), block.dim(), Backend::Exact);
    expect_pg.set(0, 0, q(1));
    CHECK(d.P_G.approx_equal(expect_pg));
    CHECK((d.P_G + d.P_R).is_identity());
    CHECK((d.P_G * d.P_R).max_abs() == 0.0);

    // L = L_G + L_R exactly
    GeneratingFunctional L = functional_from_cocycle(block, 3);
    GeneratingFunctional sum = d.L_G + d.L_R;
    for (const auto& [w, v] : L.values()) CHECK(v == sum.eval(w));

    CHECK(is_gaussian_functional(d.L_G, 2).passed());
    // eta_R has a trivial G-part: the joint eigenspace misses Ran(P_R)
    CHECK(check_parts_alpha_real(d, 2).passed());
    // orthogonality of the parts
    for (const auto& w : cf2()->basis_words(2)) {
        Scalar ip = block.inner(d.eta_G.eta(w), d.eta_R.eta(w));
        CHECK(ip.is_zero());
    }
}

TEST_CASE("decompose reports NotComplementary when the window is too small") {
    // ball radius = cutoff: every K2 eta value conserves the signed edge
    // sum, so the window span cannot complement G
    Cocycle tight = tree_cocycle(cf2(), 3, 3);
    CHECK_THROWS_AS(decompose(tight), NotComplementary);
}

namespace {

// Independent word-metric oracle over {a, A, b, B} (capitals = inverses),
// no library calls: reduced concatenation and geodesic overlap count.
std::string oracle_concat(std::string x, const std::string& y) {
    for (char c : y) {
        if (!x.empty() && x.back() != c && std::toupper(x.back()) == std::toupper(c))
            x.pop_back();
        else
            x.push_back(c);
    }
    return x;
}
std::string oracle_inverse(const std::string& x) {
    std::string r;
    for (auto it = x.rbegin(); it != x.rend(); ++it)
        r.push_back(std::isupper(*it) ? char(std::tolower(*it)) : char(std::toupper(*it)));
    return r;
}
std::string word_to_letters(const Presentation& P, const Word& w) {
    std::string s;
    for (Gen g : w) {
        const std::string& n = P.generators()[g].name;
        s.push_back(n == "a" ? 'a' : n == "a*" ? 'A' : n == "b" ? 'b' : 'B');
    }
    return s;
}

} // namespace

TEST_CASE("tree cocycle Gram matches the word-metric oracle") {
    // <eta(v), eta(w)> = (|v| + |w| - |v^{-1}w|)/2 inside the ball
    Cocycle tree = tree_cocycle(cf2(), 3, 3);
    auto words = cf2()->basis_words(3);
    std::map<Word, Vec, WordLess> table;
    for (const auto& w : words) table.emplace(w, tree.eta(w));
    for (const auto& v : words)
        for (const auto& w : words) {
            std::string sv = word_to_letters(*cf2(), v), sw = word_to_letters(*cf2(), w);
            long dist = long(oracle_concat(oracle_inverse(sv), sw).size());
            Scalar expect = q(long(sv.size()) + long(sw.size()) - dist, 2);
            CHECK(tree.inner(table.at(v), table.at(w)) == expect);
        }
}

TEST_CASE("gaussian functional check") {
    GeneratingFunctional L = functional_from_cocycle(cz_linear());
    CHECK(is_gaussian_functional(L, 3).passed());

    GeneratingFunctional Lz = functional_from_cocycle(Cocycle::zero(cz(), 1, 8));
    CHECK(is_gaussian_functional(Lz, 3).passed());

    // the word-length functional is not Gaussian
    GeneratingFunctional len = GeneratingFunctional::tabulate(cf2(), 3, [&](const Word& w) {
        return q(-long(w.size()), 2);
    });
    Report r = is_gaussian_functional(len, 2);
    CHECK(!r.passed());
}

TEST_CASE("gaussian cocycle check") {
    CHECK(is_gaussian_cocycle(cz_linear(), 3).passed());
    CHECK(is_gaussian_cocycle(Cocycle::zero(cz(), 1, 8), 3).passed());
    Cocycle tree = tree_cocycle(cf2(), 3, 6);
    Report r = is_gaussian_cocycle(tree, 2);
    CHECK(!r.passed());
}

TEST_CASE("T and T' operators") {
    // c-z: S(u^n)* = u^n, so T is the identity on the eta span
    Report r = check_T_operators(cz_linear(), 3);
    CHECK(r.passed());
    Cocycle c = cz_linear();
    for (int n = 1; n <= 3; ++n) {
        Word w(std::size_t(n), cz()->generator_index("u"));
        NCPoly pw = NCPoly::monomial(Scalar::one(Backend::Exact), w);
        Vec t_of = c.eta(cz()->star(cz()->twisted_antipode(pw)));
        CHECK(Vec::approx_equal(t_of, c.eta(w)));
    }

    // zero cocycle: vacuous pass
    CHECK(check_T_operators(Cocycle::zero(cz(), 2, 6), 2).passed());

    // symmetrized suq2 cocycle
    Report rs = check_T_operators(suq2_symmetrized(), 2);
    INFO(rs.summary());
    CHECK(rs.passed());

    // tree cocycle (real), full check battery
    Report rt = check_T_operators(tree_cocycle(cf2(), 3, 6), 2);
    CHECK(rt.passed());

    // a non-real cocycle makes T ill-defined across dependencies
    const Backend b = Backend::Exact;
    Scalar i = Scalar::parse("i", b);
    Mat pa(2, 2, b), pas(2, 2, b);
    pa.set(0, 0, i);
    pa.set(1, 1, -i);
    pas.set(0, 0, -i);
    pas.set(1, 1, i);
    Mat id2 = Mat::identity(2, b);
    Vec e1 = Vec::unit(2, b, 0), e2 = Vec::unit(2, b, 1);
    std::vector<Mat> pi = {pa, pas, id2, id2};
    std::vector<Vec> eta = {e1, (pas * e1).scaled(q(-1)), e2, e2.scaled(q(-1))};
    Cocycle twist(cf2(), 2, 6, pi, eta);
    CHECK_THROWS_AS(check_T_operators(twist, 3), IllDefined);
}

TEST_CASE("projections commute with pi and leave R and G invariant") {
    Cocycle block = Cocycle::direct_sum(f2_abelian(6), tree_cocycle(cf2(), 3, 6));
    Decomposition d = decompose(block);
    for (std::size_t g = 0; g < cf2()->generator_count(); ++g) {
        Mat lhs = d.P_G * block.pi_images()[g];
        Mat rhs = block.pi_images()[g] * d.P_G;
        CHECK(lhs.approx_equal(rhs));
    }
}

TEST_CASE("restricted-to-R cocycle has trivial Gaussian part") {
    Cocycle block = Cocycle::direct_sum(f2_abelian(6), tree_cocycle(cf2(), 3, 6));
    Decomposition d = decompose(block);
    // G vectors are annihilated by P_R
    std::vector<Mat> shifted;
    for (std::size_t g = 0; g < cf2()->generator_count(); ++g)
        shifted.push_back(block.pi_images()[g] -
                          Mat::identity(block.dim(), Backend::Exact)
                              .scaled(cf2()->epsilon_images()[g]));
    auto gbasis = intersect_kernels(shifted, Backend::Exact);
    REQUIRE(gbasis.size() == 1);
    CHECK((d.P_R * gbasis[0]).is_zero());
}
