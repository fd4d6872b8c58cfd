#include "hopfcorr/correspond.hpp"

#include <algorithm>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

namespace {

struct FormulaValues {
    std::map<Word, Scalar, WordLess> values;
    double two_form_residual = 0;
    std::string two_form_witness;
};

// Evaluates both right-hand forms of the defining formula on every basis
// word of degree <= 2*budget.
FormulaValues defining_formula(const Cocycle& c, int budget) {
    const Presentation& P = c.algebra();
    const Backend b = c.backend();
    const Scalar one = Scalar::one(b);
    FormulaValues out;

    for (const auto& w : P.basis_words(2 * budget)) {
        if (w.empty()) {
            out.values.emplace(w, Scalar::zero(b));
            continue;
        }
        Scalar denom = one + P.alpha_eigenvalue(w);
        if (denom.is_zero())
            throw SingularGamma("gamma is singular on monomial " + P.word_str(w));
        Tensor2 d = P.delta(NCPoly::monomial(one, w));
        Scalar f1 = Scalar::zero(b), f2 = Scalar::zero(b);
        for (const auto& [k, cc] : d.terms()) {
            NCPoly leg1 = NCPoly::monomial(one, k[0]);
            NCPoly leg2 = NCPoly::monomial(one, k[1]);
            f1 += cc * c.inner(c.eta(P.star(P.twisted_antipode(leg1))),
                               c.eta(P.alpha_apply(leg2)));
            f2 += cc * c.inner(c.eta(P.star(P.alpha_apply(leg1))),
                               c.eta(P.twisted_antipode(leg2)));
        }
        f1 = -f1 / denom;
        f2 = -f2 / denom;
        if (!Scalar::approx_equal(f1, f2)) {
            double dd = Scalar::distance(f1, f2);
            if (dd > out.two_form_residual) {
                out.two_form_residual = dd;
                out.two_form_witness = P.word_str(w);
            }
        }
        out.values.emplace(w, f1);
    }
    return out;
}

int default_budget(const Cocycle& c, int budget) {
    if (budget > 0) return budget;
    int k = c.cutoff() / 2;
    if (k < 1) throw DegreeExceeded("cocycle cutoff too small for a functional budget");
    return k;
}

} // namespace

GeneratingFunctional functional_from_cocycle(const Cocycle& c, int budget) {
    int k = default_budget(c, budget);
    FormulaValues fv = defining_formula(c, k);
    if (fv.two_form_residual > 0)
        throw FormulaMismatch("the two defining-formula forms disagree on " +
                              fv.two_form_witness + " (residual " +
                              std::to_string(fv.two_form_residual) +
                              "); the input is not a well-defined cocycle");
    return GeneratingFunctional(c.presentation(), k, std::move(fv.values));
}

Cocycle cocycle_from_functional(const GeneratingFunctional& L) {
    const Presentation& P = L.algebra();
    const PresentationPtr& pres = L.presentation();
    const Backend b = L.backend();
    const Scalar one = Scalar::one(b);
    const int K = L.cutoff();

    std::vector<Word> words;
    Mat G = k1_gram(L, K, &words);
    const uint32_t n = uint32_t(words.size());

    LdltResult fact = ldlt_psd(G);
    if (!fact.psd)
        throw NotConditionallyPositive("K1 Gram matrix is not PSD at cutoff " +
                                       std::to_string(K) + " (" + fact.witness + ")");
    const uint32_t r = fact.rank;
    std::vector<uint32_t> pivots = fact.pivots;
    std::sort(pivots.begin(), pivots.end());

    // Carrier: the quotient span of the pivot words, with the restricted
    // Gram as the inner-product metric.
    Mat metric(r, r, b);
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < r; ++j) metric.set(i, j, G.get(pivots[i], pivots[j]));

    // Coordinates of eta-hat(w_i) over the pivot basis.
    std::map<Word, Vec, WordLess> coords;
    {
        std::vector<Vec> cols(n, Vec(r, b));
        for (uint32_t i = 0; i < n; ++i) {
            Vec rhs(r, b);
            for (uint32_t p = 0; p < r; ++p) rhs.set(p, G.get(pivots[p], i));
            cols[i] = (r == 0) ? Vec(0, b) : solve_square(metric, rhs);
        }
        // factorization must reproduce the Gram matrix
        double worst = 0;
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) {
                Scalar rec = (r == 0) ? Scalar::zero(b) : cols[i].dot(metric * cols[j]);
                if (!Scalar::approx_equal(rec, G.get(i, j)))
                    worst = std::max(worst, Scalar::distance(rec, G.get(i, j)));
            }
        if (worst > 0)
            throw NotConditionallyPositive(
                "Gram factorization failed to reproduce the matrix (residual " +
                std::to_string(worst) + ")");
        for (uint32_t i = 0; i < n; ++i) coords.emplace(words[i], cols[i]);
    }
    coords.emplace(unit_word(), Vec(r, b));

    // eta-hat of an arbitrary polynomial: the GNS vector of (p - eps(p) 1).
    auto eta_hat = [&](const NCPoly& p) {
        NCPoly nf = P.normal_form(p);
        Vec acc(r, b);
        for (const auto& [w, cc] : nf.terms()) {
            auto it = coords.find(w);
            if (it == coords.end())
                throw DegreeExceeded("GNS window does not reach word " + P.word_str(w));
            acc.add_scaled(it->second, cc);
        }
        return acc;
    };

    // pi(g) on the span of eta-hat(words of degree <= K-1), zero on the
    // metric-orthogonal complement.
    std::vector<Word> low_words;
    for (const auto& w : P.basis_words(K - 1)) low_words.push_back(w);

    SpanBasis span(r, b);
    std::vector<Word> member_words;
    for (const auto& w : low_words) {
        auto it = coords.find(w);
        Vec v = (it != coords.end()) ? it->second : eta_hat(NCPoly::monomial(one, w));
        if (!span.insert(v)) member_words.push_back(w);
    }
    const uint32_t kdim = uint32_t(span.size());

    std::vector<Mat> pi;
    std::vector<Vec> eta_images;
    Mat B(r, kdim, b);
    for (uint32_t j = 0; j < kdim; ++j) B.set_column(j, span.members()[j]);
    Mat BM = B.adjoint() * metric; // kdim x r
    Mat gramB = BM * B;

    for (std::size_t gi = 0; gi < P.generator_count(); ++gi) {
        Gen g = Gen(gi);
        NCPoly pg = P.gen_poly(g);
        eta_images.push_back(eta_hat(pg));
        // targets on the members
        Mat T(r, kdim, b);
        for (uint32_t j = 0; j < kdim; ++j) {
            const Word& w = member_words[j];
            NCPoly gw = P.mul(pg, NCPoly::monomial(one, w));
            Vec t = eta_hat(gw);
            t.add_scaled(eta_images.back(), -P.epsilon(w));
            T.set_column(j, t);
        }
        // A = T gramB^{-1} B^* M  (minimal completion: zero off the span)
        Mat A(r, r, b);
        if (kdim > 0) {
            for (uint32_t col = 0; col < r; ++col) {
                Vec w = BM.column_vec(col);
                Vec x = solve_square(gramB, w);
                A.set_column(col, T * x);
            }
        }
        pi.push_back(std::move(A));
    }

    // Consistency across linear dependencies: the defining equations must
    // hold for every low word, not only the members.
    double worst = 0;
    std::string wit;
    for (const auto& w : low_words) {
        Vec v = eta_hat(NCPoly::monomial(one, w));
        for (std::size_t gi = 0; gi < P.generator_count(); ++gi) {
            NCPoly gw = P.mul(P.gen_poly(Gen(gi)), NCPoly::monomial(one, w));
            Vec want = eta_hat(gw);
            want.add_scaled(eta_images[gi], -P.epsilon(w));
            Vec got = pi[gi] * v;
            if (!Vec::approx_equal(got, want)) {
                double d = Vec::distance(got, want);
                if (d > worst) {
                    worst = d;
                    wit = P.generators()[gi].name + " on " + P.word_str(w);
                }
            }
        }
    }
    if (worst > 0)
        throw TruncationInconsistent("pi action not representable within the window: " + wit +
                                     " (residual " + std::to_string(worst) + ")");

    // *-consistency on the representable range:
    // <pi(g) x, y> = <x, pi(g*) y> for x, y in the span.
    for (std::size_t gi = 0; gi < P.generator_count(); ++gi) {
        Gen gs = P.star_of(Gen(gi));
        for (uint32_t i = 0; i < kdim; ++i)
            for (uint32_t j = 0; j < kdim; ++j) {
                Vec lx = pi[gi] * span.members()[i];
                Scalar lhs = lx.dot(metric * span.members()[j]);
                Vec ry = pi[gs] * span.members()[j];
                Scalar rhs = span.members()[i].dot(metric * ry);
                if (!Scalar::approx_equal(lhs, rhs))
                    throw TruncationInconsistent(
                        "pi is not *-consistent on the representable range at generator " +
                        P.generators()[gi].name);
            }
    }

    // Extension budget: Sweedler legs of stored-range words can reach
    // degree 2K, and presentations whose coproduct doubles word degree
    // need up to 4K.
    return Cocycle(pres, r, 4 * K, std::move(pi), std::move(eta_images), metric);
}

Report roundtrip_check(const GeneratingFunctional& L) {
    Report rep("roundtrip_check");
    rep.merge(check_generating(L), "pre");
    rep.merge(is_salpha_invariant(L), "pre");
    if (!rep.passed()) return rep;

    Cocycle c = cocycle_from_functional(L);
    rep.note("gns_rank", std::to_string(c.dim()));
    rep.merge(is_alpha_real(c, L.cutoff()), "gns-cocycle");

    GeneratingFunctional l2 = functional_from_cocycle(c, L.cutoff());
    double worst = 0;
    std::string wit;
    bool ok = true;
    for (const auto& [w, v] : L.values()) {
        Scalar v2 = l2.eval(w);
        if (!Scalar::approx_equal(v, v2)) {
            ok = false;
            double d = Scalar::distance(v, v2);
            if (d > worst) {
                worst = d;
                wit = L.algebra().word_str(w);
            }
        }
    }
    rep.add("round trip reproduces L on all stored words", ok, worst, wit);
    return rep;
}

Report attempt_functional(const Cocycle& c, int budget) {
    Report rep("attempt_functional");
    rep.merge(check_cocycle_welldefined(c), "pre");

    int k = budget > 0 ? budget : c.cutoff() / 2;
    if (k < 1) {
        rep.add("budget", false, std::nullopt, "cocycle cutoff too small");
        return rep;
    }
    FormulaValues fv = defining_formula(c, k);
    rep.add("two defining-formula forms agree", fv.two_form_residual <= tolerance().eps_num,
            fv.two_form_residual, fv.two_form_witness);

    GeneratingFunctional cand(c.presentation(), k, std::move(fv.values));
    const Presentation& P = c.algebra();

    double herm = 0;
    std::string herm_wit;
    for (const auto& [w, v] : cand.values()) {
        Scalar lv = cand.eval(P.star(NCPoly::monomial(Scalar::one(c.backend()), w)));
        double d = Scalar::distance(lv, v.conj());
        if (d > herm) {
            herm = d;
            herm_wit = P.word_str(w);
        }
    }
    rep.add("candidate hermitian", herm <= tolerance().eps_num, herm, herm_wit);

    Report cob = yields_coboundary(cand, c, k);
    rep.add("yields the coboundary", cob.passed(), cob.worst_residual(),
            cob.passed() ? "" : "see coboundary pairs");

    Report inv = is_salpha_invariant(cand);
    rep.add("candidate S_alpha-invariant", inv.passed(), inv.worst_residual(),
            inv.passed() ? "" : "see invariance");
    return rep;
}

Report two_cocycle_check(const Cocycle& c, int max_deg) {
    Report rep("two_cocycle_check");
    const Presentation& P = c.algebra();
    const Backend b = c.backend();
    const Scalar one = Scalar::one(b);

    std::vector<Word> words;
    for (const auto& w : P.basis_words(max_deg))
        if (!w.empty()) words.push_back(w);
    const std::size_t n = words.size();

    // shifted K1 elements and their eta values
    std::vector<NCPoly> x(n), xs(n);
    std::vector<Vec> eta_x(n, Vec(c.dim(), b)), eta_xs(n, Vec(c.dim(), b));
    std::vector<Scalar> eps_x(n, Scalar::zero(b));
    for (std::size_t i = 0; i < n; ++i) {
        NCPoly p = NCPoly::monomial(one, words[i]);
        p.add_term(unit_word(), -P.epsilon(words[i]));
        x[i] = p;
        xs[i] = P.star(p);
        eta_x[i] = c.eta(p);
        eta_xs[i] = c.eta(xs[i]);
        eps_x[i] = P.epsilon(p);
    }
    // pairwise products
    std::vector<std::vector<Vec>> eta_prod(n), eta_prod_star(n);
    for (std::size_t i = 0; i < n; ++i) {
        eta_prod[i].assign(n, Vec(c.dim(), b));
        eta_prod_star[i].assign(n, Vec(c.dim(), b));
        for (std::size_t j = 0; j < n; ++j) {
            NCPoly prod = P.mul(x[i], x[j]);
            eta_prod[i][j] = c.eta(prod);
            eta_prod_star[i][j] = c.eta(P.star(prod));
        }
    }

    bool ok = true;
    double worst = 0;
    std::string wit;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Scalar val = eps_x[i] * c.inner(eta_xs[j], eta_x[k]) -
                             c.inner(eta_prod_star[i][j], eta_x[k]) +
                             c.inner(eta_xs[i], eta_prod[j][k]) -
                             c.inner(eta_xs[i], eta_x[j]) * eps_x[k];
                if (!Scalar::approx_equal(val, Scalar::zero(b))) {
                    ok = false;
                    double d = val.abs_double();
                    if (d > worst) {
                        worst = d;
                        wit = P.word_str(words[i]) + " , " + P.word_str(words[j]) + " , " +
                              P.word_str(words[k]);
                    }
                }
            }
    rep.add("d(phi~) = 0 on K1 triples (deg <= " + std::to_string(max_deg) + ")", ok, worst,
            wit);
    rep.note("triples_checked", std::to_string(n * n * n));
    return rep;
}

Report tau_reality_transfer(const Cocycle& c, const mpq_class& t, const mpq_class& s,
                            int max_deg) {
    if (t == mpq_class(1, 2))
        throw HypothesisViolated("tau reality transfer requires t != 1/2");
    Report rep("tau_reality_transfer");
    const Presentation& P = c.algebra();

    std::vector<Scalar> alpha_t = P.alpha_from_tau(t);
    std::vector<Scalar> alpha_s = P.alpha_from_tau(s);

    Report rt = is_alpha_real(c, max_deg, &alpha_t);
    rep.add("hypothesis: tau_{it}-real (t=" + t.get_str() + ")", rt.passed(),
            rt.worst_residual(), rt.passed() ? "" : "see reality pairs");
    if (!rt.passed()) return rep;

    Report rs = is_alpha_real(c, max_deg, &alpha_s);
    rep.add("conclusion: tau_{is}-real (s=" + s.get_str() + ")", rs.passed(),
            rs.worst_residual(), rs.passed() ? "" : "see reality pairs");

    // intermediate identity L = L o tau_{2it - i} for the associated functional
    auto pres_t = P.with_alpha(alpha_t);
    Cocycle ct = c.with_presentation(pres_t);
    GeneratingFunctional L = functional_from_cocycle(ct);
    mpq_class shift = 2 * t - 1;
    bool ok = true;
    double worst = 0;
    std::string wit;
    for (const auto& [w, v] : L.values()) {
        Scalar lv = L.eval(P.tau_apply(NCPoly::monomial(Scalar::one(c.backend()), w), shift));
        if (!Scalar::approx_equal(lv, v)) {
            ok = false;
            double d = Scalar::distance(lv, v);
            if (d > worst) {
                worst = d;
                wit = P.word_str(w);
            }
        }
    }
    rep.add("L = L o tau_{2it-i} on stored words", ok, worst, wit);
    return rep;
}

} // namespace hopfcorr
