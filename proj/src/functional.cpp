#include "hopfcorr/functional.hpp"

#include <algorithm>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

GeneratingFunctional::GeneratingFunctional(PresentationPtr pres, int cutoff,
                                           std::map<Word, Scalar, WordLess> values)
    : pres_(std::move(pres)), cutoff_(cutoff), values_(std::move(values)) {
    if (cutoff_ < 1) throw ContextMismatch("functional cutoff must be >= 1");
}

GeneratingFunctional GeneratingFunctional::tabulate(
    PresentationPtr pres, int cutoff, const std::function<Scalar(const Word&)>& f) {
    std::map<Word, Scalar, WordLess> vals;
    for (const auto& w : pres->basis_words(2 * cutoff)) vals.emplace(w, f(w));
    return GeneratingFunctional(std::move(pres), cutoff, std::move(vals));
}

Scalar GeneratingFunctional::eval(const Word& w) const {
    auto it = values_.find(w);
    if (it == values_.end())
        throw DegreeExceeded("functional has no stored value for word of degree " +
                             std::to_string(w.size()));
    return it->second;
}

Scalar GeneratingFunctional::eval(const NCPoly& p) const {
    NCPoly n = pres_->normal_form(p);
    Scalar acc = Scalar::zero(backend());
    for (const auto& [w, c] : n.terms()) acc += c * eval(w);
    return acc;
}

GeneratingFunctional GeneratingFunctional::operator+(const GeneratingFunctional& o) const {
    if (pres_->name() != o.pres_->name())
        throw ContextMismatch("adding functionals over different presentations");
    int k = std::min(cutoff_, o.cutoff_);
    std::map<Word, Scalar, WordLess> vals;
    for (const auto& [w, v] : values_) {
        auto it = o.values_.find(w);
        if (it != o.values_.end() && int(w.size()) <= 2 * k) vals.emplace(w, v + it->second);
    }
    return GeneratingFunctional(pres_, k, std::move(vals));
}

double GeneratingFunctional::distance(const GeneratingFunctional& a,
                                      const GeneratingFunctional& b) {
    double worst = 0;
    for (const auto& [w, v] : a.values_) {
        auto it = b.values_.find(w);
        if (it != b.values_.end()) worst = std::max(worst, Scalar::distance(v, it->second));
    }
    return worst;
}

Mat k1_gram(const GeneratingFunctional& L, int deg, std::vector<Word>* words_out) {
    const Presentation& P = L.algebra();
    const Backend b = L.backend();
    std::vector<Word> words;
    for (const auto& w : P.basis_words(deg))
        if (!w.empty()) words.push_back(w);
    if (words_out) *words_out = words;
    const uint32_t n = uint32_t(words.size());
    // shifted basis elements w - eps(w) 1
    std::vector<NCPoly> shifted, shifted_star;
    for (const auto& w : words) {
        NCPoly p = NCPoly::monomial(Scalar::one(b), w);
        p.add_term(unit_word(), -P.epsilon(w));
        shifted.push_back(p);
        shifted_star.push_back(P.star(p));
    }
    Mat G(n, n, b);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            G.set(i, j, L.eval(P.mul(shifted_star[i], shifted[j])));
    return G;
}

Report check_generating(const GeneratingFunctional& L) {
    Report rep("check_generating");
    const Presentation& P = L.algebra();
    const Backend b = L.backend();

    Scalar at_unit = L.eval(unit_word());
    rep.add("L(1) = 0", Scalar::approx_equal(at_unit, Scalar::zero(b)),
            at_unit.abs_double(), "1");

    bool herm = true;
    double herm_res = 0;
    std::string herm_wit;
    for (const auto& [w, v] : L.values()) {
        NCPoly sw = P.star(NCPoly::monomial(Scalar::one(b), w));
        Scalar lv = L.eval(sw);
        if (!Scalar::approx_equal(lv, v.conj())) {
            herm = false;
            double d = Scalar::distance(lv, v.conj());
            if (d > herm_res) {
                herm_res = d;
                herm_wit = P.word_str(w);
            }
        }
    }
    rep.add("hermitian L(w*) = conj(L(w))", herm, herm_res, herm_wit);

    Mat G = k1_gram(L, L.cutoff());
    LdltResult l = ldlt_psd(G);
    auto ev = hermitian_eigenvalues(G);
    double min_ev = ev.empty() ? 0.0 : ev.front();
    bool psd = l.psd;
    if (b == Backend::Float) psd = min_ev >= -tolerance().eps_psd;
    rep.add("conditionally positive (K1 Gram PSD at cutoff)", psd, -min_ev, l.witness);
    rep.note("gram_min_eigenvalue", std::to_string(min_ev));
    rep.note("gram_rank", std::to_string(l.rank));
    return rep;
}

Report is_salpha_invariant(const GeneratingFunctional& L, const std::vector<Scalar>* scalings) {
    Report rep("is_salpha_invariant");
    const Presentation& P = L.algebra();
    const Backend b = L.backend();
    std::vector<Scalar> alpha = scalings ? *scalings : P.alpha_scalings();
    bool ok = true;
    double worst = 0;
    std::size_t skipped = 0, checked = 0;
    std::string wit;
    for (const auto& [w, v] : L.values()) {
        NCPoly img = P.twisted_antipode_with(NCPoly::monomial(Scalar::one(b), w), alpha);
        Scalar lv(b);
        try {
            lv = L.eval(img);
        } catch (const DegreeExceeded&) {
            // the antipode can raise word degree (determinant-style images);
            // images leaving the stored range cannot be compared
            ++skipped;
            continue;
        }
        ++checked;
        if (!Scalar::approx_equal(lv, v)) {
            ok = false;
            double d = Scalar::distance(lv, v);
            if (d > worst) {
                worst = d;
                wit = P.word_str(w);
            }
        }
    }
    rep.add("L o S_alpha = L on stored words", ok && checked > 0, worst, wit);
    rep.note("words_checked", std::to_string(checked));
    if (skipped)
        rep.note("words_skipped", std::to_string(skipped) + " (S_alpha image beyond the stored range)");
    return rep;
}

Report yields_coboundary(const GeneratingFunctional& L, const Cocycle& c, int max_deg) {
    Report rep("yields_coboundary");
    const Presentation& P = L.algebra();
    const Backend b = L.backend();
    auto words = P.basis_words(max_deg);

    std::map<Word, Vec, WordLess> eta_plain, eta_star;
    for (const auto& w : words) {
        NCPoly pw = NCPoly::monomial(Scalar::one(b), w);
        eta_plain.emplace(w, c.eta(pw));
        eta_star.emplace(w, c.eta(P.star(pw)));
    }

    bool ok = true;
    double worst = 0;
    std::string wit;
    for (const auto& v : words)
        for (const auto& w : words) {
            NCPoly prod = P.mul(NCPoly::monomial(Scalar::one(b), v),
                                NCPoly::monomial(Scalar::one(b), w));
            Scalar lhs = L.eval(prod);
            Scalar rhs = P.epsilon(v) * L.eval(w) + L.eval(v) * P.epsilon(w) +
                         c.inner(eta_star.at(v), eta_plain.at(w));
            if (!Scalar::approx_equal(lhs, rhs)) {
                ok = false;
                double d = Scalar::distance(lhs, rhs);
                if (d > worst) {
                    worst = d;
                    wit = P.word_str(v) + " , " + P.word_str(w);
                }
            }
        }
    rep.add("coboundary identity on pairs (deg <= " + std::to_string(max_deg) + ")", ok,
            worst, wit);
    return rep;
}

} // namespace hopfcorr
