#include "hopfcorr/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

Presentation::Presentation(std::string name, Backend backend, std::vector<GenInfo> gens,
                           RewriteSystem rs, std::vector<Tensor2> delta_images,
                           std::vector<Scalar> epsilon_images,
                           std::vector<NCPoly> antipode_images,
                           std::vector<Scalar> alpha_scalings, std::vector<Scalar> tau_scalings,
                           std::map<std::string, std::string> parameters)
    : name_(std::move(name)),
      backend_(backend),
      gens_(std::move(gens)),
      rs_(std::move(rs)),
      delta_(std::move(delta_images)),
      epsilon_(std::move(epsilon_images)),
      antipode_(std::move(antipode_images)),
      alpha_(std::move(alpha_scalings)),
      tau_(std::move(tau_scalings)),
      params_(std::move(parameters)) {
    const std::size_t n = gens_.size();
    if (rs_.generator_count() != n)
        throw ContextMismatch("rewrite system generator count differs from presentation");
    if (delta_.size() != n || epsilon_.size() != n || antipode_.size() != n ||
        alpha_.size() != n || tau_.size() != n)
        throw ContextMismatch("structure map tables must cover every generator");
    for (std::size_t g = 0; g < n; ++g) {
        if (gens_[g].star >= n || gens_[gens_[g].star].star != g)
            throw ContextMismatch("star pairing is not an involution on generator indices");
    }
}

Gen Presentation::generator_index(const std::string& name) const {
    for (std::size_t g = 0; g < gens_.size(); ++g)
        if (gens_[g].name == name) return Gen(g);
    throw ParseError("unknown generator '" + name + "' in presentation " + name_);
}

std::vector<std::string> Presentation::generator_names() const {
    std::vector<std::string> out;
    for (const auto& g : gens_) out.push_back(g.name);
    return out;
}

bool Presentation::alpha_is_identity() const {
    for (const auto& s : alpha_)
        if (!s.is_one()) return false;
    return true;
}

bool Presentation::tau_is_trivial() const {
    for (const auto& s : tau_)
        if (!s.is_one()) return false;
    return true;
}

NCPoly Presentation::mul(const NCPoly& p, const NCPoly& q) const {
    if (p.backend() != backend_ || q.backend() != backend_)
        throw BackendMismatch("polynomial backend differs from presentation backend");
    return normal_form(p.concat_mul(q));
}

NCPoly Presentation::star(const NCPoly& p) const {
    NCPoly out(backend_);
    for (const auto& [w, c] : p.terms()) {
        Word sw;
        sw.reserve(w.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            if (*it >= gens_.size()) throw ContextMismatch("generator index out of range");
            sw.push_back(gens_[*it].star);
        }
        out.add_term(sw, c.conj());
    }
    return normal_form(out);
}

Tensor2 Presentation::star(const Tensor2& t) const {
    return apply_legs(
        t, [this](const Word& w) { return star(NCPoly::monomial(Scalar::one(backend_), w)); },
        [this](const Word& w) { return star(NCPoly::monomial(Scalar::one(backend_), w)); });
}

Tensor2 Presentation::tensor_mul(const Tensor2& s, const Tensor2& t) const {
    Tensor2 out(backend_);
    for (const auto& [k1, c1] : s.terms())
        for (const auto& [k2, c2] : t.terms()) {
            NCPoly l = normal_form(NCPoly::monomial(c1 * c2, concat(k1[0], k2[0])));
            NCPoly r = normal_form(NCPoly::monomial(Scalar::one(backend_), concat(k1[1], k2[1])));
            for (const auto& [w1, a] : l.terms())
                for (const auto& [w2, b] : r.terms()) out.add_term({w1, w2}, a * b);
        }
    return out;
}

Tensor3 Presentation::tensor_mul(const Tensor3& s, const Tensor3& t) const {
    Tensor3 out(backend_);
    for (const auto& [k1, c1] : s.terms())
        for (const auto& [k2, c2] : t.terms()) {
            NCPoly l = normal_form(NCPoly::monomial(c1 * c2, concat(k1[0], k2[0])));
            NCPoly m = normal_form(NCPoly::monomial(Scalar::one(backend_), concat(k1[1], k2[1])));
            NCPoly r = normal_form(NCPoly::monomial(Scalar::one(backend_), concat(k1[2], k2[2])));
            for (const auto& [w1, a] : l.terms())
                for (const auto& [w2, b] : m.terms())
                    for (const auto& [w3, d] : r.terms()) out.add_term({w1, w2, w3}, a * b * d);
        }
    return out;
}

Tensor2 Presentation::flip(const Tensor2& t) const {
    Tensor2 out(backend_);
    for (const auto& [k, c] : t.terms()) out.add_term({k[1], k[0]}, c);
    return out;
}

Tensor2 Presentation::apply_legs(const Tensor2& t,
                                 const std::function<NCPoly(const Word&)>& f1,
                                 const std::function<NCPoly(const Word&)>& f2) const {
    Tensor2 out(backend_);
    for (const auto& [k, c] : t.terms()) {
        NCPoly a = f1(k[0]);
        NCPoly b = f2(k[1]);
        for (const auto& [w1, x] : a.terms())
            for (const auto& [w2, y] : b.terms()) out.add_term({w1, w2}, c * x * y);
    }
    return out;
}

Tensor2 Presentation::delta(const Word& w) const {
    Tensor2 acc = Tensor2::unit(backend_);
    for (Gen g : w) {
        if (g >= gens_.size()) throw ContextMismatch("generator index out of range");
        acc = tensor_mul(acc, delta_[g]);
    }
    return acc;
}

Tensor2 Presentation::delta(const NCPoly& a) const {
    Tensor2 out(backend_);
    for (const auto& [w, c] : a.terms()) out = out + delta(w).scaled(c);
    return out;
}

SweedlerExpansion Presentation::sweedler(const NCPoly& a) const {
    SweedlerExpansion out;
    Tensor2 d = delta(a);
    for (const auto& [k, c] : d.terms()) out.push_back({k[0], k[1], c});
    return out;
}

Tensor3 Presentation::delta2(const NCPoly& a) const {
    Tensor3 left(backend_), right(backend_);
    Tensor2 d = delta(a);
    for (const auto& [k, c] : d.terms()) {
        Tensor2 dl = delta(k[0]);
        for (const auto& [kk, cc] : dl.terms()) left.add_term({kk[0], kk[1], k[1]}, c * cc);
        Tensor2 dr = delta(k[1]);
        for (const auto& [kk, cc] : dr.terms()) right.add_term({k[0], kk[0], kk[1]}, c * cc);
    }
    if (!left.approx_equal(right))
        throw CoassociativityViolation("(Delta x id)Delta != (id x Delta)Delta on " +
                                       poly_str(a));
    return left;
}

Scalar Presentation::epsilon(const Word& w) const {
    Scalar acc = Scalar::one(backend_);
    for (Gen g : w) {
        if (g >= gens_.size()) throw ContextMismatch("generator index out of range");
        acc *= epsilon_[g];
    }
    return acc;
}

Scalar Presentation::epsilon(const NCPoly& a) const {
    Scalar acc = Scalar::zero(backend_);
    for (const auto& [w, c] : a.terms()) acc += c * epsilon(w);
    return acc;
}

NCPoly Presentation::antipode(const NCPoly& a) const {
    NCPoly out(backend_);
    for (const auto& [w, c] : a.terms()) {
        NCPoly acc = NCPoly::monomial(c, unit_word());
        // antihomomorphism: S(g1...gk) = S(gk) ... S(g1)
        for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc.concat_mul(antipode_[*it]);
        out = out + acc;
    }
    return normal_form(out);
}

Scalar Presentation::alpha_eigenvalue(const Word& w, const mpq_class& power) const {
    Scalar acc = Scalar::one(backend_);
    for (Gen g : w) acc *= alpha_[g];
    return acc.pow(power);
}

NCPoly Presentation::apply_scalings(const NCPoly& a, const std::vector<Scalar>& scalings,
                                    const mpq_class& power) const {
    std::vector<Scalar> powered;
    powered.reserve(scalings.size());
    for (const auto& s : scalings) powered.push_back(s.pow(power));
    NCPoly out(backend_);
    for (const auto& [w, c] : a.terms()) {
        Scalar f = c;
        for (Gen g : w) f *= powered[g];
        out.add_term(w, f);
    }
    return normal_form(out);
}

NCPoly Presentation::alpha_apply(const NCPoly& a, const mpq_class& power) const {
    return apply_scalings(a, alpha_, power);
}

Scalar Presentation::tau_eigenvalue(const Word& w, const mpq_class& t) const {
    Scalar acc = Scalar::one(backend_);
    for (Gen g : w) acc *= tau_[g];
    return acc.pow(t);
}

NCPoly Presentation::tau_apply(const NCPoly& a, const mpq_class& t) const {
    return apply_scalings(a, tau_, t);
}

std::vector<Scalar> Presentation::alpha_from_tau(const mpq_class& t) const {
    std::vector<Scalar> out;
    out.reserve(tau_.size());
    for (const auto& s : tau_) out.push_back(s.pow(t));
    return out;
}

NCPoly Presentation::twisted_antipode(const NCPoly& a) const {
    return antipode(alpha_apply(a));
}

NCPoly Presentation::twisted_antipode_with(const NCPoly& a,
                                           const std::vector<Scalar>& scalings) const {
    return antipode(apply_scalings(a, scalings));
}

NCPoly Presentation::gamma_apply(const NCPoly& a) const {
    NCPoly n = normal_form(a);
    NCPoly out(backend_);
    for (const auto& [w, c] : n.terms())
        out.add_term(w, c * (Scalar::one(backend_) + alpha_eigenvalue(w)));
    return out;
}

NCPoly Presentation::gamma_inverse(const NCPoly& a) const {
    NCPoly n = normal_form(a);
    NCPoly out(backend_);
    for (const auto& [w, c] : n.terms()) {
        Scalar d = Scalar::one(backend_) + alpha_eigenvalue(w);
        if (d.is_zero())
            throw SingularGamma("1 + eigenvalue vanishes on monomial " + word_str(w));
        out.add_term(w, c / d);
    }
    return out;
}

std::shared_ptr<Presentation> Presentation::with_alpha(std::vector<Scalar> scalings) const {
    auto copy = std::make_shared<Presentation>(*this);
    if (scalings.size() != gens_.size())
        throw ContextMismatch("alpha table must cover every generator");
    copy->alpha_ = std::move(scalings);
    return copy;
}

std::string Presentation::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i)
        os << (i ? " " : "") << gens_.at(w[i]).name;
    return os.str();
}

std::string Presentation::poly_str(const NCPoly& p) const {
    return p.str(generator_names());
}

// ----------------------------------------------------------------- verify

Report Presentation::verify_hopf_axioms(int max_deg) const {
    Report rep("verify_hopf_axioms");
    const Scalar one = Scalar::one(backend_);

    // Structure maps respect the defining relations.
    const auto& rules = rs_.rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
        NCPoly lhs_raw = NCPoly::monomial(one, rules[r].lhs);
        const NCPoly& rhs = rules[r].rhs;
        std::string tag = "rule " + std::to_string(r) + " (" + word_str(rules[r].lhs) + ")";

        Tensor2 dl = delta(lhs_raw), dr = delta(rhs);
        rep.add("delta respects " + tag, dl.approx_equal(dr), Tensor2::distance(dl, dr), tag);
        Scalar el = epsilon(lhs_raw), er = epsilon(rhs);
        rep.add("epsilon respects " + tag, Scalar::approx_equal(el, er),
                Scalar::distance(el, er), tag);
        NCPoly sl = antipode(lhs_raw), sr = antipode(rhs);
        rep.add("antipode respects " + tag, sl.approx_equal(sr), NCPoly::distance(sl, sr), tag);
        NCPoly stl = star(lhs_raw), str_ = star(rhs);
        rep.add("star respects " + tag, stl.approx_equal(str_), NCPoly::distance(stl, str_),
                tag);

        // alpha homogeneity: eigenvalue of lhs equals that of every rhs monomial
        Scalar lam = alpha_eigenvalue(rules[r].lhs);
        bool homog = true;
        for (const auto& [w, c] : rhs.terms())
            if (alpha_eigenvalue(w) != lam) homog = false;
        rep.add("alpha-homogeneous " + tag, homog, std::nullopt, tag);
        if (!tau_is_trivial()) {
            Scalar lt = tau_eigenvalue(rules[r].lhs, 1);
            bool th = true;
            for (const auto& [w, c] : rhs.terms())
                if (tau_eigenvalue(w, 1) != lt) th = false;
            rep.add("tau-homogeneous " + tag, th, std::nullopt, tag);
        }
    }

    // Hopf laws on the irreducible word basis.
    auto words = basis_words(max_deg);
    double worst_co = 0, worst_cu = 0, worst_anti = 0, worst_ss = 0, worst_ad = 0,
           worst_ea = 0;
    std::string wit_co, wit_cu, wit_anti, wit_ss, wit_ad, wit_ea;
    bool ok_co = true, ok_cu = true, ok_anti = true, ok_ss = true, ok_ad = true, ok_ea = true;

    for (const auto& w : words) {
        NCPoly pw = NCPoly::monomial(one, w);
        // coassociativity (delta2 throws on violation)
        try {
            delta2(pw);
        } catch (const CoassociativityViolation&) {
            ok_co = false;
            wit_co = word_str(w);
        }
        // counit law
        Tensor2 d = delta(pw);
        NCPoly left(backend_), right(backend_);
        for (const auto& [k, c] : d.terms()) {
            left.add_term(k[1], c * epsilon(k[0]));
            right.add_term(k[0], c * epsilon(k[1]));
        }
        left = normal_form(left);
        right = normal_form(right);
        if (!left.approx_equal(pw) || !right.approx_equal(pw)) {
            ok_cu = false;
            wit_cu = word_str(w);
            worst_cu = std::max({worst_cu, NCPoly::distance(left, pw),
                                 NCPoly::distance(right, pw)});
        }
        // antipode relation m(S x id)Delta = eps(.)1 = m(id x S)Delta
        NCPoly s_left(backend_), s_right(backend_);
        for (const auto& [k, c] : d.terms()) {
            s_left = s_left + mul(antipode(NCPoly::monomial(c, k[0])),
                                  NCPoly::monomial(one, k[1]));
            s_right = s_right + mul(NCPoly::monomial(c, k[0]),
                                    antipode(NCPoly::monomial(one, k[1])));
        }
        NCPoly target = NCPoly::monomial(epsilon(w), unit_word());
        s_left = normal_form(s_left);
        s_right = normal_form(s_right);
        if (!s_left.approx_equal(target) || !s_right.approx_equal(target)) {
            ok_anti = false;
            wit_anti = word_str(w);
            worst_anti = std::max({worst_anti, NCPoly::distance(s_left, target),
                                   NCPoly::distance(s_right, target)});
        }
        // S o * o S o * = id
        NCPoly ss = star(antipode(star(antipode(pw))));
        if (!ss.approx_equal(pw)) {
            ok_ss = false;
            wit_ss = word_str(w);
            worst_ss = std::max(worst_ss, NCPoly::distance(ss, pw));
        }
        // (alpha x alpha) Delta = Delta alpha
        Tensor2 ad = apply_legs(
            d, [this](const Word& u) { return alpha_apply(NCPoly::monomial(Scalar::one(backend_), u)); },
            [this](const Word& u) { return alpha_apply(NCPoly::monomial(Scalar::one(backend_), u)); });
        Tensor2 da = delta(alpha_apply(pw));
        if (!ad.approx_equal(da)) {
            ok_ad = false;
            wit_ad = word_str(w);
            worst_ad = std::max(worst_ad, Tensor2::distance(ad, da));
        }
        // eps o alpha = eps
        Scalar ea = epsilon(alpha_apply(pw));
        if (!Scalar::approx_equal(ea, epsilon(w))) {
            ok_ea = false;
            wit_ea = word_str(w);
            worst_ea = std::max(worst_ea, Scalar::distance(ea, epsilon(w)));
        }
    }
    rep.add("coassociativity (deg <= " + std::to_string(max_deg) + ")", ok_co, worst_co, wit_co);
    rep.add("counit law", ok_cu, worst_cu, wit_cu);
    rep.add("antipode relation", ok_anti, worst_anti, wit_anti);
    rep.add("S***-involution", ok_ss, worst_ss, wit_ss);
    rep.add("(alpha x alpha)Delta = Delta alpha", ok_ad, worst_ad, wit_ad);
    rep.add("epsilon o alpha = epsilon", ok_ea, worst_ea, wit_ea);
    rep.note("basis_words", std::to_string(words.size()));
    return rep;
}

Report Presentation::verify_admissible() const {
    Report rep("verify_admissible");
    const Scalar one = Scalar::one(backend_);
    const int pair_deg = 2;

    // scalings positive real (signed tables are reported, and condition (iv)
    // below catches the resulting eigenvalue collisions)
    bool pos = true;
    std::string wit_pos;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        if (!alpha_[g].is_positive_real()) {
            pos = false;
            wit_pos = gens_[g].name + " -> " + alpha_[g].str();
        }
    }
    rep.add("alpha scalings positive", pos, std::nullopt, wit_pos);

    // (i) homomorphism: alpha respects relations (= homogeneity of rules)
    bool hom = true;
    std::string wit_hom;
    for (const auto& r : rs_.rules()) {
        Scalar lam = alpha_eigenvalue(r.lhs);
        for (const auto& [w, c] : r.rhs.terms())
            if (alpha_eigenvalue(w) != lam) {
                hom = false;
                wit_hom = word_str(r.lhs);
            }
    }
    rep.add("(i) homomorphism (rule respect)", hom, std::nullopt, wit_hom);

    // (ii) alpha o * o alpha o * = id on generators
    bool ok2 = true;
    std::string wit2;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        NCPoly v = alpha_apply(star(alpha_apply(star(gen_poly(Gen(g))))));
        if (!v.approx_equal(gen_poly(Gen(g)))) {
            ok2 = false;
            wit2 = gens_[g].name;
        }
    }
    rep.add("(ii) alpha*alpha* = id", ok2, std::nullopt, wit2);

    // (iii) (alpha x alpha) Delta = Delta alpha on generators
    bool ok3 = true;
    std::string wit3;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
        Tensor2 lhs = apply_legs(
            delta_[g],
            [this](const Word& u) { return alpha_apply(NCPoly::monomial(Scalar::one(backend_), u)); },
            [this](const Word& u) { return alpha_apply(NCPoly::monomial(Scalar::one(backend_), u)); });
        Tensor2 rhs = delta(alpha_apply(gen_poly(Gen(g))));
        if (!lhs.approx_equal(rhs)) {
            ok3 = false;
            wit3 = gens_[g].name;
        }
    }
    rep.add("(iii) intertwines Delta", ok3, std::nullopt, wit3);

    // (iv) 1 + lambda_w != 0, (v) 1 + lambda_v lambda_w != 0 on monomials
    auto words = basis_words(pair_deg);
    bool ok4 = true, ok5 = true;
    std::string wit4, wit5;
    for (const auto& w : words) {
        Scalar lam = alpha_eigenvalue(w);
        if ((one + lam).is_zero()) {
            ok4 = false;
            wit4 = word_str(w) + ": eigenvalue 1+(" + lam.str() + ")=0";
        }
    }
    for (const auto& v : words) {
        Scalar lv = alpha_eigenvalue(v);
        for (const auto& w : words) {
            if ((one + lv * alpha_eigenvalue(w)).is_zero()) {
                ok5 = false;
                wit5 = word_str(v) + " , " + word_str(w);
            }
        }
    }
    rep.add("(iv) id+alpha bijective (monomial eigenvalues)", ok4, std::nullopt, wit4);
    rep.add("(v) id x id + alpha x alpha bijective", ok5, std::nullopt, wit5);

    // Prop. (i)-(vii) on generators
    bool p1 = true, p3 = true, p4 = true, p5 = true, p6 = true, p7 = true;
    std::string w1, w3, w4, w5, w6, w7;
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        Gen g = Gen(gi);
        NCPoly pg = gen_poly(g);
        NCPoly inv = alpha_apply(pg, -1);
        NCPoly sas = star(alpha_apply(star(pg)));
        if (!inv.approx_equal(sas)) { p1 = false; w1 = gens_[gi].name; }
        if (!Scalar::approx_equal(epsilon(alpha_apply(pg)), epsilon_[gi]) ||
            !Scalar::approx_equal(epsilon(twisted_antipode(pg)), epsilon_[gi])) {
            p3 = false; w3 = gens_[gi].name;
        }
        NCPoly as = alpha_apply(antipode(pg));
        NCPoly sa = antipode(alpha_apply(pg));
        if (!as.approx_equal(sa)) { p4 = false; w4 = gens_[gi].name; }
        NCPoly tw = star(twisted_antipode(star(twisted_antipode(pg))));
        if (!tw.approx_equal(pg)) { p5 = false; w5 = gens_[gi].name; }
        Tensor2 lhs6 = apply_legs(
            flip(delta_[g]),
            [this](const Word& u) { return twisted_antipode(NCPoly::monomial(Scalar::one(backend_), u)); },
            [this](const Word& u) { return twisted_antipode(NCPoly::monomial(Scalar::one(backend_), u)); });
        Tensor2 rhs6 = delta(twisted_antipode(pg));
        if (!lhs6.approx_equal(rhs6)) { p6 = false; w6 = gens_[gi].name; }
        // twisted antipode relation
        NCPoly acc1(backend_), acc2(backend_);
        for (const auto& [k, c] : delta_[g].terms()) {
            acc1 = acc1 + mul(twisted_antipode(NCPoly::monomial(c, k[0])),
                              alpha_apply(NCPoly::monomial(one, k[1])));
            acc2 = acc2 + mul(alpha_apply(NCPoly::monomial(c, k[0])),
                              twisted_antipode(NCPoly::monomial(one, k[1])));
        }
        NCPoly tgt = NCPoly::monomial(epsilon_[gi], unit_word());
        if (!normal_form(acc1).approx_equal(tgt) || !normal_form(acc2).approx_equal(tgt)) {
            p7 = false; w7 = gens_[gi].name;
        }
    }
    NCPoly a1 = alpha_apply(unit());
    bool p2 = a1.approx_equal(unit()) && twisted_antipode(unit()).approx_equal(unit());
    rep.add("prop (i) alpha^{-1} = * alpha *", p1, std::nullopt, w1);
    rep.add("prop (ii) alpha(1) = 1", p2, std::nullopt, p2 ? "" : "1");
    rep.add("prop (iii) epsilon o alpha = epsilon", p3, std::nullopt, w3);
    rep.add("prop (iv) alpha S = S alpha", p4, std::nullopt, w4);
    rep.add("prop (v) S_a * S_a * = id", p5, std::nullopt, w5);
    rep.add("prop (vi) (S_a x S_a) flip Delta = Delta S_a", p6, std::nullopt, w6);
    rep.add("prop (vii) twisted antipode relation", p7, std::nullopt, w7);
    return rep;
}

Report Presentation::validate(int max_deg, std::size_t max_overlap) const {
    Report rep("validate " + name_);
    std::size_t ov = max_overlap ? max_overlap : std::max<std::size_t>(2 * rs_.longest_lhs(), 4);
    rep.merge(rs_.check_local_confluence(ov), "confluence");
    rep.merge(verify_hopf_axioms(max_deg), "hopf");
    rep.merge(verify_admissible(), "admissible");
    return rep;
}

} // namespace hopfcorr
