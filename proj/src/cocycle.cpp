#include "hopfcorr/cocycle.hpp"

#include <algorithm>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

Cocycle::Cocycle(PresentationPtr pres, uint32_t dim, int cutoff, std::vector<Mat> pi_images,
                 std::vector<Vec> eta_images, std::optional<Mat> metric)
    : pres_(std::move(pres)),
      dim_(dim),
      cutoff_(cutoff),
      pi_(std::move(pi_images)),
      eta_(std::move(eta_images)) {
    const std::size_t n = pres_->generator_count();
    if (pi_.size() != n || eta_.size() != n)
        throw ContextMismatch("cocycle tables must cover every generator");
    for (const auto& m : pi_)
        if (m.rows() != dim_ || m.cols() != dim_)
            throw ContextMismatch("pi image has wrong dimensions");
    for (const auto& v : eta_)
        if (v.dim() != dim_) throw ContextMismatch("eta image has wrong dimension");
    if (metric) {
        metric_ = std::move(*metric);
        if (metric_.rows() != dim_ || metric_.cols() != dim_)
            throw ContextMismatch("metric has wrong dimensions");
        metric_identity_ = metric_.is_identity();
    } else {
        metric_ = Mat::identity(dim_, backend());
        metric_identity_ = true;
    }
    if (metric_identity_) {
        metric_inv_ = metric_;
    } else {
        // column-by-column inverse; the metric must be nonsingular
        metric_inv_ = Mat(dim_, dim_, backend());
        for (uint32_t j = 0; j < dim_; ++j)
            metric_inv_.set_column(j, solve_square(metric_, Vec::unit(dim_, backend(), j)));
    }
}

Cocycle Cocycle::with_presentation(PresentationPtr pres) const {
    Cocycle c = *this;
    if (pres->generator_count() != pres_->generator_count())
        throw ContextMismatch("presentations have different generator sets");
    c.pres_ = std::move(pres);
    return c;
}

Cocycle Cocycle::with_cutoff(int cutoff) const {
    Cocycle c = *this;
    c.cutoff_ = cutoff;
    return c;
}

Vec Cocycle::eta(const Word& w) const {
    if (int(w.size()) > cutoff_)
        throw DegreeExceeded("eta on word of degree " + std::to_string(w.size()) +
                             " beyond cutoff " + std::to_string(cutoff_));
    Vec v(dim_, backend());
    Scalar eps_suffix = Scalar::one(backend());
    for (std::size_t i = w.size(); i-- > 0;) {
        Gen g = w[i];
        if (g >= pi_.size()) throw ContextMismatch("generator index out of range");
        v = pi_[g] * v;
        v.add_scaled(eta_[g], eps_suffix);
        eps_suffix *= pres_->epsilon_images()[g];
    }
    return v;
}

Vec Cocycle::eta(const NCPoly& p) const {
    Vec acc(dim_, backend());
    for (const auto& [w, c] : p.terms()) acc.add_scaled(eta(w), c);
    return acc;
}

Mat Cocycle::pi(const Word& w) const {
    Mat acc = Mat::identity(dim_, backend());
    for (Gen g : w) {
        if (g >= pi_.size()) throw ContextMismatch("generator index out of range");
        acc = acc * pi_[g];
    }
    return acc;
}

Mat Cocycle::pi(const NCPoly& p) const {
    Mat acc(dim_, dim_, backend());
    for (const auto& [w, c] : p.terms()) acc = acc + pi(w).scaled(c);
    return acc;
}

Scalar Cocycle::inner(const Vec& x, const Vec& y) const {
    if (metric_identity_) return x.dot(y);
    return x.dot(metric_ * y);
}

Mat Cocycle::metric_adjoint(const Mat& a) const {
    if (metric_identity_) return a.adjoint();
    return metric_inv_ * a.adjoint() * metric_;
}

std::map<Word, Vec, WordLess> Cocycle::eta_table(int max_deg) const {
    std::map<Word, Vec, WordLess> out;
    for (const auto& w : pres_->basis_words(max_deg)) out.emplace(w, eta(w));
    return out;
}

Cocycle Cocycle::zero(PresentationPtr pres, uint32_t dim, int cutoff) {
    Backend b = pres->backend();
    std::vector<Mat> pi(pres->generator_count(), Mat::identity(dim, b));
    // the trivial representation pi = epsilon(.) I
    for (std::size_t g = 0; g < pres->generator_count(); ++g)
        pi[g] = Mat::identity(dim, b).scaled(pres->epsilon_images()[g]);
    std::vector<Vec> eta(pres->generator_count(), Vec(dim, b));
    return Cocycle(std::move(pres), dim, cutoff, std::move(pi), std::move(eta));
}

Cocycle Cocycle::direct_sum(const Cocycle& a, const Cocycle& b) {
    if (a.pres_ != b.pres_ && a.pres_->name() != b.pres_->name())
        throw ContextMismatch("direct sum of cocycles over different presentations");
    const Backend be = a.backend();
    const uint32_t n = a.dim_ + b.dim_;
    std::vector<Mat> pi;
    std::vector<Vec> eta;
    for (std::size_t g = 0; g < a.pi_.size(); ++g) {
        Mat m(n, n, be);
        for (uint32_t j = 0; j < a.dim_; ++j)
            for (const auto& [i, v] : a.pi_[g].column(j)) m.set(i, j, v);
        for (uint32_t j = 0; j < b.dim_; ++j)
            for (const auto& [i, v] : b.pi_[g].column(j)) m.set(i + a.dim_, j + a.dim_, v);
        pi.push_back(std::move(m));
        Vec v(n, be);
        for (const auto& [i, s] : a.eta_[g].entries()) v.set(i, s);
        for (const auto& [i, s] : b.eta_[g].entries()) v.set(i + a.dim_, s);
        eta.push_back(std::move(v));
    }
    Mat metric(n, n, be);
    for (uint32_t j = 0; j < a.dim_; ++j)
        for (const auto& [i, v] : a.metric_.column(j)) metric.set(i, j, v);
    for (uint32_t j = 0; j < b.dim_; ++j)
        for (const auto& [i, v] : b.metric_.column(j)) metric.set(i + a.dim_, j + a.dim_, v);
    return Cocycle(a.pres_, n, std::min(a.cutoff_, b.cutoff_), std::move(pi), std::move(eta),
                   std::move(metric));
}

// ------------------------------------------------------------------ checks

Report check_cocycle_welldefined(const Cocycle& c) {
    Report rep("check_cocycle_welldefined");
    const Presentation& P = c.algebra();

    rep.add("metric hermitian", c.metric().is_hermitian());
    if (!c.metric_is_identity()) {
        LdltResult l = ldlt_psd(c.metric());
        rep.add("metric positive definite", l.psd && l.rank == c.dim(), l.min_diag,
                l.witness);
    }

    bool star_ok = true;
    std::string star_wit;
    double star_res = 0;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        Mat adj = c.metric_adjoint(c.pi_images()[g]);
        const Mat& ps = c.pi_images()[P.star_of(Gen(g))];
        if (!adj.approx_equal(ps)) {
            star_ok = false;
            star_wit = P.generators()[g].name;
            star_res = std::max(star_res, Mat::distance(adj, ps));
        }
    }
    rep.add("pi(g*) = pi(g)^dagger", star_ok, star_res, star_wit);

    const auto& rules = P.rewrite_system().rules();
    for (std::size_t r = 0; r < rules.size(); ++r) {
        std::string tag = "rule " + std::to_string(r) + " (" + P.word_str(rules[r].lhs) + ")";
        Mat pl = c.pi(rules[r].lhs);
        Mat pr = c.pi(rules[r].rhs);
        rep.add("pi respects " + tag, pl.approx_equal(pr), Mat::distance(pl, pr), tag);
        Vec el = c.eta(rules[r].lhs);
        Vec er = c.eta(rules[r].rhs);
        rep.add("eta respects " + tag, Vec::approx_equal(el, er), Vec::distance(el, er), tag);
    }
    rep.note("eta(1) = 0", "structural (empty word evaluates to the zero vector)");
    return rep;
}

Report is_alpha_real(const Cocycle& c, int max_deg, const std::vector<Scalar>* scalings) {
    Report rep("is_alpha_real");
    const Presentation& P = c.algebra();
    std::vector<Scalar> alpha = scalings ? *scalings : P.alpha_scalings();

    auto words = P.basis_words(max_deg);
    std::map<Word, Vec, WordLess> table;
    for (const auto& w : words) table.emplace(w, c.eta(w));

    auto eta_poly = [&](const NCPoly& p) { return c.eta(p); };

    bool ok = true;
    double worst = 0;
    std::string wit;
    for (const auto& v : words) {
        NCPoly pv = NCPoly::monomial(Scalar::one(c.backend()), v);
        // S_alpha(v^*) precomputed per row
        NCPoly sv = P.twisted_antipode_with(P.star(pv), alpha);
        for (const auto& w : words) {
            NCPoly pw = NCPoly::monomial(Scalar::one(c.backend()), w);
            NCPoly sw = P.star(P.twisted_antipode_with(pw, alpha));
            Scalar lhs = c.inner(table.at(v), table.at(w));
            Scalar rhs = c.inner(eta_poly(sw), eta_poly(sv));
            if (!Scalar::approx_equal(lhs, rhs)) {
                ok = false;
                double d = Scalar::distance(lhs, rhs);
                if (d > worst) {
                    worst = d;
                    wit = P.word_str(v) + " , " + P.word_str(w);
                }
            }
        }
    }
    rep.add("alpha-reality on pairs (deg <= " + std::to_string(max_deg) + ")", ok, worst, wit);
    rep.note("pairs_checked", std::to_string(words.size() * words.size()));
    return rep;
}

Report check_cocycle_identities(const Cocycle& c, int max_deg) {
    Report rep("check_cocycle_identities");
    const Presentation& P = c.algebra();
    const Backend b = c.backend();
    const Scalar one = Scalar::one(b);

    bool ok1 = true, ok2 = true, ok3 = true, ok4 = true, ok5 = true;
    double w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0;
    std::string s1, s2, s3, s4, s5;

    for (const auto& w : P.basis_words(max_deg)) {
        NCPoly pw = NCPoly::monomial(one, w);
        Tensor2 d = P.delta(pw);
        Vec lhs1 = c.eta(P.twisted_antipode(pw));
        Vec lhs2 = c.eta(P.alpha_apply(pw));
        Vec lhs3 = c.eta(P.star(P.twisted_antipode(pw)));
        Vec lhs4 = c.eta(P.star(P.alpha_apply(pw)));
        Vec r1(c.dim(), b), r2(c.dim(), b), r3(c.dim(), b), r4(c.dim(), b);
        Scalar f1 = Scalar::zero(b), f2 = Scalar::zero(b);
        for (const auto& [k, cc] : d.terms()) {
            NCPoly leg1 = NCPoly::monomial(one, k[0]);
            NCPoly leg2 = NCPoly::monomial(one, k[1]);
            NCPoly sa1 = P.twisted_antipode(leg1);
            NCPoly al1 = P.alpha_apply(leg1);
            NCPoly sa2 = P.twisted_antipode(leg2);
            NCPoly al2 = P.alpha_apply(leg2);
            // (i)  eta(S_a(w))   = - sum pi(S_a(w1)) eta(alpha(w2))
            r1.add_scaled(c.pi(sa1) * c.eta(al2), -cc);
            // (ii) eta(alpha(w)) = - sum pi(alpha(w1)) eta(S_a(w2))
            r2.add_scaled(c.pi(al1) * c.eta(sa2), -cc);
            // (iii) eta(S_a(w)^*) = - sum conj(c) pi(S_a(w2)^*) eta(alpha(w1)^*)
            r3.add_scaled(c.pi(P.star(sa2)) * c.eta(P.star(al1)), -cc.conj());
            // (iv)  eta(alpha(w)^*) = - sum conj(c) pi(alpha(w2)^*) eta(S_a(w1)^*)
            r4.add_scaled(c.pi(P.star(al2)) * c.eta(P.star(sa1)), -cc.conj());
            // two-form agreement terms
            f1 += cc * c.inner(c.eta(P.star(sa1)), c.eta(al2));
            f2 += cc * c.inner(c.eta(P.star(al1)), c.eta(sa2));
        }
        auto upd = [&](bool& ok, double& worst, std::string& wit, const Vec& a, const Vec& r) {
            if (!Vec::approx_equal(a, r)) {
                ok = false;
                double dd = Vec::distance(a, r);
                if (dd > worst) {
                    worst = dd;
                    wit = P.word_str(w);
                }
            }
        };
        upd(ok1, w1, s1, lhs1, r1);
        upd(ok2, w2, s2, lhs2, r2);
        upd(ok3, w3, s3, lhs3, r3);
        upd(ok4, w4, s4, lhs4, r4);
        if (!Scalar::approx_equal(f1, f2)) {
            ok5 = false;
            double dd = Scalar::distance(f1, f2);
            if (dd > w5) {
                w5 = dd;
                s5 = P.word_str(w);
            }
        }
    }
    rep.add("(i) eta(S_a .) exchange", ok1, w1, s1);
    rep.add("(ii) eta(alpha .) exchange", ok2, w2, s2);
    rep.add("(iii) eta(S_a(.)^*) exchange", ok3, w3, s3);
    rep.add("(iv) eta(alpha(.)^*) exchange", ok4, w4, s4);
    rep.add("two defining-formula forms agree", ok5, w5, s5);
    return rep;
}

std::pair<Cocycle, Report> restrict_to_span(const Cocycle& c) {
    Report rep("restrict_to_span");
    const Backend b = c.backend();
    const Presentation& P = c.algebra();
    SpanBasis span(c.dim(), b);
    int probe = std::min(c.cutoff(), 6);
    for (const auto& w : P.basis_words(probe)) span.insert(c.eta(w));
    if (span.size() == c.dim()) {
        rep.add("eta spans the carrier", true);
        return {c, rep};
    }
    rep.note("nondegeneracy",
             "eta spans only " + std::to_string(span.size()) + " of " +
                 std::to_string(c.dim()) + " dimensions; restricting");
    const auto& basis = span.members();
    const uint32_t r = uint32_t(span.size());
    Mat B(c.dim(), r, b);
    for (uint32_t j = 0; j < r; ++j) B.set_column(j, basis[j]);
    Mat BM = B.adjoint() * c.metric();
    Mat gram = BM * B;
    auto compress_vec = [&](const Vec& v) {
        return solve_square(gram, BM * v);
    };
    std::vector<Mat> pi;
    std::vector<Vec> eta;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        Mat m(r, r, b);
        for (uint32_t j = 0; j < r; ++j)
            m.set_column(j, compress_vec(c.pi_images()[g] * basis[j]));
        pi.push_back(std::move(m));
        eta.push_back(compress_vec(c.eta_images()[g]));
    }
    rep.add("eta spans the carrier", true, std::nullopt, "after restriction");
    return {Cocycle(c.presentation(), r, c.cutoff(), std::move(pi), std::move(eta), gram), rep};
}

} // namespace hopfcorr
