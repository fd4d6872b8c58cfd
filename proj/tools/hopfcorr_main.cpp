#include <iostream>

#include "CLI11.hpp"
#include "hopfcorr/cli.hpp"
#include "hopfcorr/errors.hpp"

using namespace hopfcorr;

int main(int argc, char** argv) {
    CLI::App app{"hopfcorr: cocycles and generating functionals on presented Hopf *-algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"verify-hopf", "confluence + Hopf axiom suite for a presentation"},
        {"check-admissible", "admissibility conditions and their consequences"},
        {"from-cocycle", "generating functional of an alpha-real cocycle"},
        {"from-functional", "GNS cocycle of a generating functional"},
        {"roundtrip", "functional -> GNS -> functional reproduction"},
        {"attempt", "diagnose whether a cocycle admits a generating functional"},
        {"decompose", "maximal Gaussian / purely non-Gaussian splitting"},
        {"qbeta", "matrix identity relating L^b and (eta^b)* eta^b"},
        {"pinch", "spectral pinching of the matrix functional"},
        {"proper", "properness off a finite exceptional set, up to a horizon"},
        {"symmetrize", "conjugate cocycle symmetrization eta + eta-bar"},
        {"two-cocycle", "2-cocycle identity for the pairing form"},
        {"tau-transfer", "scaling-group reality transfer t -> s"},
        {"make-tree", "emit the free-group tree cocycle on a ball"},
        {"make-coreps", "emit a built-in corep family"},
    };
    for (const auto& [name, blurb] : commands) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("--preset,--presentation", cfg.presentation,
                        "preset name (optionally name?p=v&...) or presentation file")
            ->required();
        sub->add_option("--cocycle", cfg.cocycle_path, "cocycle file");
        sub->add_option("--functional", cfg.functional_path, "functional file");
        sub->add_option("--coreps", cfg.coreps_path, "corep family file");
        sub->add_option("--cutoff", cfg.cutoff, "degree budget for functionals");
        sub->add_option("--max-deg", cfg.max_deg, "degree bound for word/pair/triple checks");
        sub->add_option("--tol", cfg.eps_num, "numeric comparison tolerance");
        sub->add_option("--psd-tol", cfg.eps_psd, "PSD eigenvalue slack");
        sub->add_option("--backend", cfg.backend, "exact|float (default: presentation rule)");
        sub->add_option("--horizon", cfg.horizon, "corep enumeration bound");
        sub->add_option("--M", cfg.properness_level, "properness level (rational)");
        sub->add_option("--alpha", cfg.alpha, "id or tau:<t> (overrides the preset alpha)");
        sub->add_option("--t", cfg.t, "tau-transfer hypothesis parameter");
        sub->add_option("--s", cfg.s, "tau-transfer conclusion parameter");
        sub->add_option("--radius", cfg.radius, "tree ball radius (make-tree)");
        sub->add_option("--out", cfg.out, "output path for constructed artifacts");
        sub->add_option("--report", cfg.report_out, "also write the report here");
    }

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        Report rep = run_command(cfg);
        std::cout << canonical_dump(report_to_json(rep));
        return exit_code(rep);
    } catch (const ValidationFailed& e) {
        json j = report_to_json(e.report);
        j["error"] = "ValidationFailed";
        std::cout << canonical_dump(j);
        return 1;
    } catch (const HopfError& e) {
        json j;
        j["error"] = e.what();
        j["status"] = "fail";
        std::cout << canonical_dump(j);
        return 3;
    }
}
