#include "hopfcorr/cli.hpp"

#include <algorithm>
#include <set>

#include "hopfcorr/errors.hpp"
#include "hopfcorr/levy.hpp"

namespace hopfcorr {

namespace {

mpq_class parse_mpq(const std::string& s, const char* what) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError(std::string("bad rational ") + what + " '" + s + "'");
    }
}

PresentationPtr apply_alpha_flag(PresentationPtr P, const std::string& alpha) {
    if (alpha.empty()) return P;
    if (alpha == "id") {
        std::vector<Scalar> ones(P->generator_count(), Scalar::one(P->backend()));
        return P->with_alpha(std::move(ones));
    }
    if (alpha.rfind("tau:", 0) == 0) {
        mpq_class t = parse_mpq(alpha.substr(4), "tau parameter");
        return P->with_alpha(P->alpha_from_tau(t));
    }
    throw ParseError("unknown --alpha '" + alpha + "' (use id or tau:<t>)");
}

} // namespace

int exit_code(const Report& r) {
    switch (r.status()) {
        case Status::Pass: return 0;
        case Status::Fail: return 1;
        default: return 2;
    }
}

Report run_command(const RunConfig& cfg) {
    tolerance().eps_num = cfg.eps_num;
    tolerance().eps_psd = cfg.eps_psd;

    const std::set<std::string> unvalidated = {"verify-hopf", "check-admissible"};
    PresentationPtr P = load_presentation(cfg.presentation, cfg.backend, cfg.max_deg,
                                          !unvalidated.count(cfg.command));
    P = apply_alpha_flag(P, cfg.alpha);

    auto need_cocycle = [&]() {
        if (cfg.cocycle_path.empty()) throw ParseError("command needs --cocycle");
        return cocycle_from_json(load_file(cfg.cocycle_path), P);
    };
    auto need_functional = [&]() {
        if (cfg.functional_path.empty()) throw ParseError("command needs --functional");
        return functional_from_json(load_file(cfg.functional_path), P);
    };
    auto corep_family = [&]() {
        if (!cfg.coreps_path.empty()) {
            CorepFamily F = coreps_from_json(load_file(cfg.coreps_path), P);
            Report v = F.validate();
            if (!v.passed()) throw ValidationFailed(v);
            return F;
        }
        return preset_corep_family(P, cfg.horizon);
    };

    Report rep(cfg.command);

    if (cfg.command == "verify-hopf") {
        rep.merge(P->check_local_confluence(
                      std::max<std::size_t>(2 * P->rewrite_system().longest_lhs(), 4)),
                  "confluence");
        rep.merge(P->verify_hopf_axioms(cfg.max_deg), "hopf");
    } else if (cfg.command == "check-admissible") {
        rep.merge(P->verify_admissible(), "admissible");
    } else if (cfg.command == "from-cocycle") {
        Cocycle c = need_cocycle();
        Report wd = check_cocycle_welldefined(c);
        if (!wd.passed()) throw ValidationFailed(wd);
        rep.merge(wd, "welldefined");
        GeneratingFunctional L = functional_from_cocycle(c, cfg.cutoff);
        rep.merge(check_generating(L), "result");
        rep.merge(is_salpha_invariant(L), "result");
        if (!cfg.out.empty()) save_file(cfg.out, functional_to_json(L));
    } else if (cfg.command == "from-functional") {
        GeneratingFunctional L = need_functional();
        Report gen = check_generating(L);
        if (!gen.passed()) throw ValidationFailed(gen);
        rep.merge(gen, "pre");
        Cocycle c = cocycle_from_functional(L);
        rep.note("gns_rank", std::to_string(c.dim()));
        // the defining property of the construction, exact on the window
        rep.merge(yields_coboundary(L, c, std::min(cfg.max_deg, L.cutoff())), "result");
        if (!cfg.out.empty()) save_file(cfg.out, cocycle_to_json(c));
    } else if (cfg.command == "roundtrip") {
        rep.merge(roundtrip_check(need_functional()));
    } else if (cfg.command == "attempt") {
        rep.merge(attempt_functional(need_cocycle(), cfg.cutoff));
    } else if (cfg.command == "decompose") {
        Decomposition d = decompose(need_cocycle(), std::clamp(cfg.max_deg, 1, 3));
        rep.merge(d.report);
        rep.merge(is_gaussian_functional(d.L_G, std::min(cfg.max_deg, d.L_G.cutoff())),
                  "L_G gaussian");
        if (!cfg.out.empty()) {
            save_file(cfg.out + ".gaussian.json", functional_to_json(d.L_G));
            save_file(cfg.out + ".rest.json", functional_to_json(d.L_R));
        }
    } else if (cfg.command == "qbeta") {
        Cocycle c = need_cocycle();
        CorepFamily F = corep_family();
        GeneratingFunctional L = cfg.functional_path.empty()
                                     ? functional_from_cocycle(c, cfg.cutoff)
                                     : need_functional();
        rep.merge(qbeta_identity_check(c, L, F));
    } else if (cfg.command == "pinch") {
        GeneratingFunctional L = need_functional();
        CorepFamily F = corep_family();
        MatrixFunctional M = functional_matrix(L, F);
        MatrixFunctional pinched = pinch_average(M, F);
        MatrixFunctional twice = pinch_average(pinched, F);
        bool idem = true;
        for (std::size_t i = 0; i < pinched.mats.size(); ++i)
            if (!pinched.mats[i].approx_equal(twice.mats[i])) idem = false;
        rep.add("pinching idempotent", idem);
        if (!cfg.out.empty()) {
            json j;
            j["presentation"] = P->name();
            json arr = json::array();
            for (std::size_t i = 0; i < pinched.mats.size(); ++i) {
                json rows = json::array();
                for (uint32_t r = 0; r < pinched.mats[i].rows(); ++r) {
                    json row = json::array();
                    for (uint32_t cjj = 0; cjj < pinched.mats[i].cols(); ++cjj)
                        row.push_back(pinched.mats[i].get(r, cjj).str());
                    rows.push_back(row);
                }
                arr.push_back({{"label", pinched.labels[i]}, {"matrix", rows}});
            }
            j["pinched"] = arr;
            save_file(cfg.out, j);
        }
    } else if (cfg.command == "proper") {
        CorepFamily F = corep_family();
        Scalar M = Scalar::rational(P->backend(), parse_mpq(cfg.properness_level, "M"));
        PropernessResult res;
        if (!cfg.cocycle_path.empty())
            res = properness_check(need_cocycle(), F, M);
        else
            res = properness_check(need_functional(), F, M);
        rep.merge(res.report);
    } else if (cfg.command == "symmetrize") {
        Cocycle c = need_cocycle();
        CorepFamily F = corep_family();
        Report sub;
        Cocycle sym = conjugate_symmetrize(c, std::min(cfg.max_deg, 2), &F, &sub);
        rep.merge(sub);
        if (!cfg.out.empty()) save_file(cfg.out, cocycle_to_json(sym));
    } else if (cfg.command == "two-cocycle") {
        rep.merge(two_cocycle_check(need_cocycle(), cfg.max_deg));
    } else if (cfg.command == "tau-transfer") {
        rep.merge(tau_reality_transfer(need_cocycle(), parse_mpq(cfg.t, "t"),
                                       parse_mpq(cfg.s, "s"), cfg.max_deg));
    } else if (cfg.command == "make-tree") {
        if (P->name() != "c-f2")
            throw ContextMismatch("make-tree needs the c-f2 presentation");
        Cocycle c = tree_cocycle(P, cfg.radius, cfg.cutoff);
        rep.merge(check_cocycle_welldefined(c), "tree");
        rep.note("dim", std::to_string(c.dim()));
        if (!cfg.out.empty()) save_file(cfg.out, cocycle_to_json(c));
    } else if (cfg.command == "make-coreps") {
        CorepFamily F = preset_corep_family(P, cfg.horizon);
        rep.merge(F.validate());
        if (!cfg.out.empty()) save_file(cfg.out, coreps_to_json(F));
    } else {
        throw ParseError("unknown command '" + cfg.command + "'");
    }

    rep.set_provenance("presentation", cfg.presentation);
    for (const auto& [label, path] :
         std::initializer_list<std::pair<const char*, const std::string&>>{
             {"cocycle", cfg.cocycle_path},
             {"functional", cfg.functional_path},
             {"coreps", cfg.coreps_path}})
        if (!path.empty()) rep.set_provenance(label, file_hash(path));
    rep.set_provenance("backend", to_string(P->backend()));
    rep.set_provenance("cutoff", std::to_string(cfg.cutoff));
    rep.set_provenance("eps_num", std::to_string(cfg.eps_num));
    rep.set_provenance("eps_psd", std::to_string(cfg.eps_psd));
    if (!cfg.report_out.empty()) save_file(cfg.report_out, report_to_json(rep));
    return rep;
}

} // namespace hopfcorr
