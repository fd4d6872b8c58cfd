#include "hopfcorr/coreps.hpp"

#include <algorithm>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

Report CorepFamily::validate() const {
    Report rep("corep_family_validate");
    const Presentation& P = *pres_;
    const Backend b = P.backend();
    const Scalar one = Scalar::one(b);

    bool corep_ok = true, unit_ok = true, q_ok = true;
    double cw = 0, uw = 0;
    std::string cwit, uwit, qwit;
    for (const auto& U : coreps_) {
        if (U.entries.size() != std::size_t(U.dim) * U.dim)
            throw ContextMismatch("corep " + U.label + " has a ragged entry table");
        if (U.q.size() != U.dim)
            throw ContextMismatch("corep " + U.label + " Q diagonal has wrong length");
        for (const auto& qv : U.q)
            if (!qv.is_positive_real()) {
                q_ok = false;
                qwit = U.label;
            }
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j) {
                // Delta(u_ij) = sum_k u_ik (x) u_kj
                Tensor2 lhs = P.delta(U.at(i, j));
                Tensor2 rhs(b);
                for (uint32_t k = 0; k < U.dim; ++k)
                    for (const auto& [w1, c1] : U.at(i, k).terms())
                        for (const auto& [w2, c2] : U.at(k, j).terms())
                            rhs.add_term({w1, w2}, c1 * c2);
                if (!lhs.approx_equal(rhs)) {
                    corep_ok = false;
                    double d = Tensor2::distance(lhs, rhs);
                    if (d > cw) {
                        cw = d;
                        cwit = U.label + " entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
                    }
                }
                // unitarity: (U U*)_ij = delta_ij = (U* U)_ij
                NCPoly uu(b), u2(b);
                for (uint32_t k = 0; k < U.dim; ++k) {
                    uu = uu + P.mul(U.at(i, k), P.star(U.at(j, k)));
                    u2 = u2 + P.mul(P.star(U.at(k, i)), U.at(k, j));
                }
                NCPoly target =
                    (i == j) ? NCPoly::unit(b) : NCPoly::zero(b);
                if (!uu.approx_equal(target) || !u2.approx_equal(target)) {
                    unit_ok = false;
                    double d = std::max(NCPoly::distance(uu, target),
                                        NCPoly::distance(u2, target));
                    if (d > uw) {
                        uw = d;
                        uwit = U.label + " entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
                    }
                }
            }
    }
    rep.add("corep property Delta(u_ij) = sum u_ik x u_kj", corep_ok, cw, cwit);
    rep.add("unitarity under the rewrite system", unit_ok, uw, uwit);
    rep.add("Q strictly positive", q_ok, std::nullopt, qwit);
    return rep;
}

MatrixFunctional functional_matrix(const GeneratingFunctional& L, const CorepFamily& F) {
    MatrixFunctional out;
    const Backend b = L.backend();
    for (const auto& U : F.coreps()) {
        Mat m(U.dim, U.dim, b);
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j) m.set(i, j, L.eval(U.at(i, j)));
        out.labels.push_back(U.label);
        out.mats.push_back(std::move(m));
    }
    return out;
}

MatrixCocycle cocycle_matrix(const Cocycle& c, const CorepFamily& F) {
    MatrixCocycle out;
    const Backend b = c.backend();
    for (const auto& U : F.coreps()) {
        std::vector<std::vector<Vec>> eta_cols(U.dim);
        Mat stacked(U.dim * c.dim(), U.dim, b);
        for (uint32_t j = 0; j < U.dim; ++j) {
            for (uint32_t k = 0; k < U.dim; ++k) {
                Vec v = c.eta(U.at(k, j));
                eta_cols[j].push_back(v);
                for (const auto& [i, s] : v.entries()) stacked.set(k * c.dim() + i, j, s);
            }
        }
        Mat gram(U.dim, U.dim, b);
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j) {
                Scalar acc = Scalar::zero(b);
                for (uint32_t k = 0; k < U.dim; ++k)
                    acc += c.inner(eta_cols[i][k], eta_cols[j][k]);
                gram.set(i, j, acc);
            }
        out.labels.push_back(U.label);
        out.stacked.push_back(std::move(stacked));
        out.gram.push_back(std::move(gram));
    }
    return out;
}

Report qbeta_identity_check(const Cocycle& c, const GeneratingFunctional& L,
                            const CorepFamily& F) {
    Report rep("qbeta_identity_check");
    const Backend b = c.backend();
    MatrixFunctional lf = functional_matrix(L, F);
    MatrixCocycle mc = cocycle_matrix(c, F);

    bool ok = true;
    double worst = 0;
    std::string wit;
    for (std::size_t u = 0; u < F.size(); ++u) {
        const Corep& U = F.coreps()[u];
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j) {
                Scalar ratio = (U.q[j] / U.q[i]).pow(mpq_class(1, 2));
                Scalar lij = lf.mats[u].get(i, j);
                Scalar gij = mc.gram[u].get(i, j);
                Scalar residual = lij + ratio * (lij + gij);
                if (!Scalar::approx_equal(residual, Scalar::zero(b))) {
                    ok = false;
                    double d = residual.abs_double();
                    if (d > worst) {
                        worst = d;
                        wit = U.label + " (" + std::to_string(i) + "," + std::to_string(j) +
                              ")";
                    }
                }
            }
    }
    rep.add("Q^beta matrix identity", ok, worst, wit);
    return rep;
}

MatrixFunctional pinch_average(const MatrixFunctional& M, const CorepFamily& F) {
    if (M.mats.size() != F.size())
        throw ContextMismatch("matrix family and corep family sizes differ");
    MatrixFunctional out;
    out.labels = M.labels;
    for (std::size_t u = 0; u < F.size(); ++u) {
        const Corep& U = F.coreps()[u];
        Mat p(U.dim, U.dim, M.mats[u].backend());
        for (uint32_t i = 0; i < U.dim; ++i)
            for (uint32_t j = 0; j < U.dim; ++j) {
                // eigenvalue groups of Q^beta (tolerance-aware on floats)
                if (Scalar::approx_equal(U.q[i], U.q[j])) p.set(i, j, M.mats[u].get(i, j));
            }
        out.mats.push_back(std::move(p));
    }
    return out;
}

namespace {

PropernessResult properness_impl(const std::vector<std::string>& labels,
                                 const std::vector<Mat>& mats, const Scalar& M,
                                 bool functional_form) {
    PropernessResult res;
    Report rep(functional_form ? "properness_check(functional)" : "properness_check(cocycle)");
    std::size_t certified = 0;
    for (std::size_t u = 0; u < mats.size(); ++u) {
        const Mat& X = mats[u];
        const Backend b = X.backend();
        // cocycle form: X - M I >= 0;  functional form: -X - M I >= 0
        Mat shifted = functional_form
                          ? X.scaled(-Scalar::one(b)) - Mat::identity(X.rows(), b).scaled(M)
                          : X - Mat::identity(X.rows(), b).scaled(M);
        if (!shifted.is_hermitian()) {
            res.exceptional.push_back(labels[u]);
            continue;
        }
        LdltResult l = ldlt_psd(shifted);
        if (l.psd)
            ++certified;
        else
            res.exceptional.push_back(labels[u]);
    }
    std::string set;
    for (std::size_t i = 0; i < res.exceptional.size(); ++i)
        set += (i ? "," : "") + res.exceptional[i];
    rep.note("exceptional_set", set);
    rep.note("exceptional_count", std::to_string(res.exceptional.size()));
    rep.note("certified_count", std::to_string(certified));
    bool proper_up_to_horizon = certified > 0;
    rep.note("verdict", proper_up_to_horizon ? "proper up to horizon (condition certified off a finite set)"
                                             : "not proper at horizon (every label exceptional)");
    rep.add("condition certified off a finite exceptional set", proper_up_to_horizon,
            std::nullopt, proper_up_to_horizon ? "" : "all labels exceptional");
    res.report = std::move(rep);
    return res;
}

} // namespace

PropernessResult properness_check(const Cocycle& c, const CorepFamily& F, const Scalar& M) {
    MatrixCocycle mc = cocycle_matrix(c, F);
    return properness_impl(mc.labels, mc.gram, M, false);
}

PropernessResult properness_check(const GeneratingFunctional& L, const CorepFamily& F,
                                  const Scalar& M) {
    MatrixFunctional mf = functional_matrix(L, F);
    return properness_impl(mf.labels, mf.mats, M, true);
}

Cocycle conjugate_symmetrize(const Cocycle& c, int reality_deg, const CorepFamily* F,
                             Report* out) {
    const Presentation& P = c.algebra();
    // scalings of tau_{i/2}; IrrationalPower under the exact backend when
    // the square roots do not exist
    std::vector<Scalar> half = P.alpha_from_tau(mpq_class(1, 2));

    // R = S o tau_{i/2}; eta-bar(g) = conj eta(R(g*)), pi-op(g) = conj pi(R(g*))
    auto Rmap = [&](const NCPoly& p) { return P.twisted_antipode_with(p, half); };
    std::vector<Mat> pi_bar;
    std::vector<Vec> eta_bar;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        NCPoly rgs = Rmap(P.star(P.gen_poly(Gen(g))));
        pi_bar.push_back(c.pi(rgs).conj());
        eta_bar.push_back(c.eta(rgs).conj());
    }
    Cocycle bar(c.presentation(), c.dim(), c.cutoff(), std::move(pi_bar), std::move(eta_bar),
                c.metric().conj());
    Cocycle sym = Cocycle::direct_sum(c, bar);

    Report rep("conjugate_symmetrize");
    rep.merge(check_cocycle_welldefined(sym), "welldefined");
    Report real = is_alpha_real(sym, reality_deg, &half);
    rep.add("symmetrized cocycle is tau_{i/2}-real", real.passed(), real.worst_residual(),
            real.passed() ? "" : "see reality pairs");

    if (F) {
        MatrixCocycle before = cocycle_matrix(c, *F);
        MatrixCocycle after = cocycle_matrix(sym, *F);
        bool mono = true;
        std::string wit;
        for (std::size_t u = 0; u < F->size(); ++u) {
            LdltResult l = ldlt_psd(after.gram[u] - before.gram[u]);
            if (!l.psd) {
                mono = false;
                wit = F->coreps()[u].label;
            }
        }
        rep.add("(eta + eta-bar Gram) >= (eta Gram) per corep", mono, std::nullopt, wit);
    }
    if (!rep.passed()) throw ValidationFailed(rep);
    if (out) *out = std::move(rep);
    return sym;
}

} // namespace hopfcorr
