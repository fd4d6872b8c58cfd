#include "hopfcorr/levy.hpp"

#include <algorithm>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

namespace {

// Spanning family of K2 inside the degree window: products
// (v - eps(v))(w - eps(w)) over non-unit basis word pairs with
// |v| + |w| <= window.
std::vector<NCPoly> k2_spanning(const Presentation& P, int window) {
    const Backend b = P.backend();
    const Scalar one = Scalar::one(b);
    std::vector<NCPoly> out;
    auto words = P.basis_words(window - 1);
    for (const auto& v : words) {
        if (v.empty()) continue;
        NCPoly pv = NCPoly::monomial(one, v);
        pv.add_term(unit_word(), -P.epsilon(v));
        for (const auto& w : words) {
            if (w.empty() || int(v.size() + w.size()) > window) continue;
            NCPoly pw = NCPoly::monomial(one, w);
            pw.add_term(unit_word(), -P.epsilon(w));
            out.push_back(P.mul(pv, pw));
        }
    }
    return out;
}

} // namespace

Decomposition decompose(const Cocycle& input, int reality_deg) {
    auto [c, span_rep] = restrict_to_span(input);
    const Presentation& P = c.algebra();
    const Backend b = c.backend();

    Report pre("decompose/pre");
    pre.merge(span_rep);
    pre.merge(check_cocycle_welldefined(c), "welldefined");
    pre.merge(is_alpha_real(c, reality_deg), "alpha-real");
    if (!pre.passed()) throw ValidationFailed(pre);

    Report rep("decompose");
    rep.merge(span_rep);

    // G = intersection of Ker(pi(g) - eps(g) I)
    std::vector<Mat> shifted;
    for (std::size_t g = 0; g < P.generator_count(); ++g)
        shifted.push_back(c.pi_images()[g] -
                          Mat::identity(c.dim(), b).scaled(P.epsilon_images()[g]));
    std::vector<Vec> gbasis = intersect_kernels(shifted, b);
    rep.note("dim_G", std::to_string(gbasis.size()));

    // R = span of eta on the K2 window, with a one-degree stability probe
    SpanBasis rspan(c.dim(), b), rspan_smaller(c.dim(), b);
    for (const auto& p : k2_spanning(P, c.cutoff())) rspan.insert(c.eta(p));
    for (const auto& p : k2_spanning(P, c.cutoff() - 1)) rspan_smaller.insert(c.eta(p));
    rep.note("dim_R_window", std::to_string(rspan.size()));
    bool stable = rspan.size() == rspan_smaller.size();
    rep.note("window_stability", stable ? "R stable under window growth"
                                        : "R still growing at the window edge");
    if (!stable)
        rep.mark_indeterminate("R changed when the window grew by one degree");

    // orthogonality G perp R
    bool orth = true;
    double worth = 0;
    for (const auto& g : gbasis)
        for (const auto& r : rspan.members()) {
            Scalar ip = c.inner(g, r);
            if (!Scalar::approx_equal(ip, Scalar::zero(b))) {
                orth = false;
                worth = std::max(worth, ip.abs_double());
            }
        }
    rep.add("G orthogonal to eta(K2)", orth, worth);

    // complementarity: G + R must be the whole carrier, directly
    if (gbasis.size() + rspan.size() != c.dim()) {
        throw NotComplementary(
            "dim G + dim R = " + std::to_string(gbasis.size()) + " + " +
            std::to_string(rspan.size()) + " != " + std::to_string(c.dim()) +
            " — the degree window is too small to span the complement");
    }
    SpanBasis combined(c.dim(), b);
    for (const auto& g : gbasis) combined.insert(g);
    for (const auto& r : rspan.members()) combined.insert(r);
    if (combined.size() != c.dim())
        throw NotComplementary("G and the eta(K2) window overlap");
    rep.add("R + G = carrier", true);

    Mat P_G = gbasis.empty() ? Mat(c.dim(), c.dim(), b) : projector_onto(gbasis, c.metric());
    Mat P_R = Mat::identity(c.dim(), b) - P_G;

    // projector sanity: hermitian w.r.t. the metric, idempotent, invariance
    Mat MPG = c.metric() * P_G;
    rep.add("P_G metric-hermitian", MPG.approx_equal(MPG.adjoint()),
            Mat::distance(MPG, MPG.adjoint()));
    rep.add("P_G idempotent", (P_G * P_G).approx_equal(P_G));
    bool inv = true;
    double winv = 0;
    std::string inv_wit;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        Mat lhs = P_G * c.pi_images()[g];
        Mat rhs = c.pi_images()[g] * P_G;
        if (!lhs.approx_equal(rhs)) {
            inv = false;
            double d = Mat::distance(lhs, rhs);
            if (d > winv) {
                winv = d;
                inv_wit = P.generators()[g].name;
            }
        }
    }
    rep.add("projections commute with pi", inv, winv, inv_wit);

    // component cocycles on the same carrier
    std::vector<Vec> eta_g, eta_r;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        eta_g.push_back(P_G * c.eta_images()[g]);
        eta_r.push_back(P_R * c.eta_images()[g]);
    }
    Cocycle cg(c.presentation(), c.dim(), c.cutoff(), c.pi_images(), eta_g, c.metric());
    Cocycle cr(c.presentation(), c.dim(), c.cutoff(), c.pi_images(), eta_r, c.metric());

    rep.merge(is_alpha_real(cg, reality_deg), "eta_G alpha-real");
    rep.merge(is_alpha_real(cr, reality_deg), "eta_R alpha-real");

    int budget = c.cutoff() / 2;
    GeneratingFunctional L = functional_from_cocycle(c, budget);
    GeneratingFunctional L_G = functional_from_cocycle(cg, budget);
    GeneratingFunctional L_R = functional_from_cocycle(cr, budget);
    GeneratingFunctional sum = L_G + L_R;
    double dsum = GeneratingFunctional::distance(L, sum);
    bool ok = true;
    for (const auto& [w, v] : L.values())
        if (!Scalar::approx_equal(v, sum.eval(w))) ok = false;
    rep.add("L = L_G + L_R on stored words", ok, dsum);

    Decomposition d{std::move(P_G), std::move(P_R), std::move(cg), std::move(cr),
                    std::move(L_G), std::move(L_R), Report()};
    d.report = std::move(rep);
    return d;
}

Report is_gaussian_functional(const GeneratingFunctional& L, int max_deg) {
    Report rep("is_gaussian_functional");
    const Presentation& P = L.algebra();
    auto k2 = k2_spanning(P, max_deg);
    bool ok = true;
    double worst = 0;
    std::string wit;
    for (std::size_t i = 0; i < k2.size(); ++i) {
        NCPoly xs = P.star(k2[i]);
        for (std::size_t j = 0; j < k2.size(); ++j) {
            Scalar v = L.eval(P.mul(xs, k2[j]));
            if (!Scalar::approx_equal(v, Scalar::zero(L.backend()))) {
                ok = false;
                double d = v.abs_double();
                if (d > worst) {
                    worst = d;
                    wit = "K2 pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        }
    }
    rep.add("L vanishes on K2* K2 (deg <= " + std::to_string(max_deg) + ")", ok, worst, wit);
    rep.note("k2_spanning_size", std::to_string(k2.size()));
    return rep;
}

Report is_gaussian_cocycle(const Cocycle& c, int max_deg) {
    Report rep("is_gaussian_cocycle");
    const Presentation& P = c.algebra();
    const Backend b = c.backend();
    const Scalar one = Scalar::one(b);
    auto words = P.basis_words(max_deg);
    bool ok = true;
    double worst = 0;
    std::string wit;
    for (const auto& v : words) {
        if (v.empty()) continue;
        for (const auto& w : words) {
            if (w.empty() || int(v.size() + w.size()) > c.cutoff()) continue;
            Vec lhs = c.eta(P.mul(NCPoly::monomial(one, v), NCPoly::monomial(one, w)));
            Vec rhs = c.eta(w).scaled(P.epsilon(v));
            rhs.add_scaled(c.eta(v), P.epsilon(w));
            if (!Vec::approx_equal(lhs, rhs)) {
                ok = false;
                double d = Vec::distance(lhs, rhs);
                if (d > worst) {
                    worst = d;
                    wit = P.word_str(v) + " , " + P.word_str(w);
                }
            }
        }
    }
    rep.add("Gaussian extension rule on pairs (deg <= " + std::to_string(max_deg) + ")", ok,
            worst, wit);
    return rep;
}

Report check_T_operators(const Cocycle& c, int max_deg) {
    Report rep("check_T_operators");
    const Presentation& P = c.algebra();
    const Backend b = c.backend();
    const Scalar one = Scalar::one(b);

    std::vector<Word> words;
    for (const auto& w : P.basis_words(max_deg))
        if (!w.empty()) words.push_back(w);

    // values of T and T' on the eta vectors of basis words
    std::vector<Vec> X, YT, YTp;
    for (const auto& w : words) {
        NCPoly pw = NCPoly::monomial(one, w);
        X.push_back(c.eta(pw));
        YT.push_back(c.eta(P.star(P.twisted_antipode(pw))));
        YTp.push_back(c.eta(P.twisted_antipode(P.star(pw))));
    }

    // well-definedness: T and T' must be constant across linear
    // dependencies of the eta values (conjugate-linearly)
    SpanBasis span(c.dim(), b);
    std::vector<std::size_t> members;
    bool well = true;
    double wworst = 0;
    std::string wwit;
    for (std::size_t i = 0; i < words.size(); ++i) {
        auto dep = span.insert(X[i]);
        if (!dep) {
            members.push_back(i);
            continue;
        }
        Vec wantT(c.dim(), b), wantTp(c.dim(), b);
        for (std::size_t k = 0; k < dep->size(); ++k) {
            wantT.add_scaled(YT[members[k]], (*dep)[k].conj());
            wantTp.add_scaled(YTp[members[k]], (*dep)[k].conj());
        }
        if (!Vec::approx_equal(wantT, YT[i]) || !Vec::approx_equal(wantTp, YTp[i])) {
            well = false;
            double d = std::max(Vec::distance(wantT, YT[i]), Vec::distance(wantTp, YTp[i]));
            if (d > wworst) {
                wworst = d;
                wwit = P.word_str(words[i]);
            }
        }
    }
    if (!well)
        throw IllDefined("T is inconsistent across eta dependencies at " + wwit +
                         " (residual " + std::to_string(wworst) +
                         ") — the cocycle is not alpha-real");
    rep.add("T, T' well-defined across dependencies", well, wworst, wwit);

    // conjugate-linear matrices: T x = A conj(x) with A conj(x_m) = y_m,
    // minimally completed off the conjugated span
    const uint32_t kdim = uint32_t(members.size());
    Mat A_T(c.dim(), c.dim(), b), A_Tp(c.dim(), c.dim(), b);
    if (kdim > 0) {
        Mat C(c.dim(), kdim, b);
        for (uint32_t j = 0; j < kdim; ++j) C.set_column(j, X[members[j]].conj());
        Mat Mbar = c.metric().conj();
        Mat CM = C.adjoint() * Mbar;
        Mat gramC = CM * C;
        Mat T(c.dim(), kdim, b), Tp(c.dim(), kdim, b);
        for (uint32_t j = 0; j < kdim; ++j) {
            T.set_column(j, YT[members[j]]);
            Tp.set_column(j, YTp[members[j]]);
        }
        for (uint32_t col = 0; col < c.dim(); ++col) {
            Vec w = CM.column_vec(col);
            Vec x = solve_square(gramC, w);
            A_T.set_column(col, T * x);
            A_Tp.set_column(col, Tp * x);
        }
    }
    // matrices reproduce the direct values
    bool mat_ok = true;
    double mworst = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
        Vec got = A_T * X[members[j]].conj();
        Vec gotp = A_Tp * X[members[j]].conj();
        if (!Vec::approx_equal(got, YT[members[j]]) ||
            !Vec::approx_equal(gotp, YTp[members[j]])) {
            mat_ok = false;
            mworst = std::max({mworst, Vec::distance(got, YT[members[j]]),
                               Vec::distance(gotp, YTp[members[j]])});
        }
    }
    rep.add("(matrix, conjugation) realization matches", mat_ok, mworst);

    // involutivity on the span: T(T(x)) = x
    bool invol = true;
    double iworst = 0;
    std::string iwit;
    for (std::size_t j = 0; j < members.size(); ++j) {
        Vec tt = A_T * (A_T * X[members[j]].conj()).conj();
        Vec tptp = A_Tp * (A_Tp * X[members[j]].conj()).conj();
        if (!Vec::approx_equal(tt, X[members[j]]) || !Vec::approx_equal(tptp, X[members[j]])) {
            invol = false;
            double d = std::max(Vec::distance(tt, X[members[j]]),
                                Vec::distance(tptp, X[members[j]]));
            if (d > iworst) {
                iworst = d;
                iwit = P.word_str(words[members[j]]);
            }
        }
    }
    rep.add("T^2 = id = T'^2 on the span", invol, iworst, iwit);

    // mutual adjointness <T eta(a), T' eta(b)> = <eta(b), eta(a)>
    bool adj = true;
    double aworst = 0;
    std::string awit;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = 0; j < words.size(); ++j) {
            Scalar lhs = c.inner(YT[i], YTp[j]);
            Scalar rhs = c.inner(X[j], X[i]);
            if (!Scalar::approx_equal(lhs, rhs)) {
                adj = false;
                double d = Scalar::distance(lhs, rhs);
                if (d > aworst) {
                    aworst = d;
                    awit = P.word_str(words[i]) + " , " + P.word_str(words[j]);
                }
            }
        }
    rep.add("mutual adjointness <T.,T'.> = <.,.> reversed", adj, aworst, awit);

    // invariance of eta(K2) under T and T'
    int window = std::min(c.cutoff(), 2 * max_deg);
    auto k2 = k2_spanning(P, window);
    SpanBasis r(c.dim(), b);
    for (const auto& p : k2) r.insert(c.eta(p));
    bool invar = true;
    double vworst = 0;
    for (const auto& p : k2) {
        Vec t = c.eta(P.star(P.twisted_antipode(p)));
        Vec tp = c.eta(P.twisted_antipode(P.star(p)));
        if (!r.contains(t) || !r.contains(tp)) invar = false;
    }
    rep.add("eta(K2) invariant under T and T'", invar, vworst);
    return rep;
}

Report check_parts_alpha_real(const Decomposition& d, int max_deg) {
    Report rep("check_parts_alpha_real");
    rep.merge(is_alpha_real(d.eta_G, max_deg), "eta_G");
    rep.merge(is_alpha_real(d.eta_R, max_deg), "eta_R");
    return rep;
}

} // namespace hopfcorr
