#include "hopfcorr/presets.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

std::string data_dir() {
    if (const char* env = std::getenv("HOPFCORR_DATA_DIR")) return env;
#ifdef HOPFCORR_SOURCE_DATA_DIR
    return HOPFCORR_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

namespace {

std::map<std::string, std::string> parse_query(const std::string& q) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    while (i < q.size()) {
        std::size_t amp = q.find('&', i);
        std::string kv = q.substr(i, amp == std::string::npos ? amp : amp - i);
        i = (amp == std::string::npos) ? q.size() : amp + 1;
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("bad preset parameter '" + kv + "'");
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

} // namespace

PresentationPtr load_presentation(const std::string& spec, const std::string& backend_override,
                                  int verify_deg, bool validate) {
    std::string name = spec;
    std::map<std::string, std::string> params;
    std::size_t qm = spec.find('?');
    if (qm != std::string::npos) {
        name = spec.substr(0, qm);
        params = parse_query(spec.substr(qm + 1));
    }
    std::string path = name;
    if (!std::filesystem::exists(path)) {
        path = data_dir() + "/presets/" + name + ".json";
        if (!std::filesystem::exists(path))
            throw ParseError("no presentation file or preset named '" + name + "'");
    }
    PresentationPtr P;
    try {
        P = presentation_from_json(load_file(path), params, backend_override);
    } catch (const RuleOrderViolation& e) {
        Report rep("load_presentation " + name);
        rep.add("rewrite rules strictly decrease the term order", false, std::nullopt,
                e.what());
        throw ValidationFailed(rep);
    }
    if (validate) {
        Report rep = P->validate(verify_deg);
        if (!rep.passed()) throw ValidationFailed(rep);
    }
    return P;
}

Cocycle tree_cocycle(PresentationPtr f2, int radius, int cutoff) {
    const Presentation& P = *f2;
    const Backend b = P.backend();
    if (radius < 1) throw ContextMismatch("tree radius must be >= 1");

    // positive generators: those whose name does not end in '*'
    std::vector<Gen> pos;
    for (std::size_t g = 0; g < P.generator_count(); ++g)
        if (!P.generators()[g].name.ends_with("*")) pos.push_back(Gen(g));

    // ball vertices and edges (v, s): v -> v s for positive s, both inside
    auto vertices = P.basis_words(radius);
    std::map<Word, uint32_t, WordLess> vindex;
    for (const auto& v : vertices) vindex.emplace(v, uint32_t(vindex.size()));

    struct Edge {
        Word base;
        Gen s;
    };
    std::vector<Edge> edges;
    std::map<std::pair<Word, Gen>, uint32_t> eindex;
    for (const auto& v : vertices) {
        for (Gen s : pos) {
            Word target = v;
            target.push_back(s);
            NCPoly nf = P.normal_form(NCPoly::monomial(Scalar::one(b), target));
            const Word& t = nf.terms().begin()->first;
            if (int(t.size()) > radius) continue;
            eindex.emplace(std::make_pair(v, s), uint32_t(edges.size()));
            edges.push_back({v, s});
        }
    }
    const uint32_t n = uint32_t(edges.size());

    // signed permutation for translation by each positive generator
    auto build_translation = [&](Gen g) {
        NCPoly pg = NCPoly::monomial(Scalar::one(b), Word{g});
        std::vector<int64_t> next(n, -1);
        std::vector<bool> has_prev(n, false);
        for (uint32_t e = 0; e < n; ++e) {
            NCPoly moved = P.mul(pg, NCPoly::monomial(Scalar::one(b), edges[e].base));
            const Word& nb = moved.terms().begin()->first;
            auto it = eindex.find({nb, edges[e].s});
            if (it != eindex.end()) {
                next[e] = it->second;
                has_prev[it->second] = true;
            }
        }
        Mat m(n, n, b);
        const Scalar one = Scalar::one(b);
        std::vector<bool> seen(n, false);
        for (uint32_t start = 0; start < n; ++start) {
            if (has_prev[start] || seen[start]) continue;
            // walk the chain, close it with a -1 arc back to the start
            uint32_t e = start;
            seen[e] = true;
            while (next[e] >= 0) {
                m.set(uint32_t(next[e]), e, one);
                e = uint32_t(next[e]);
                seen[e] = true;
            }
            m.set(start, e, -one);
        }
        return m;
    };

    std::vector<Mat> pi(P.generator_count(), Mat(n, n, b));
    std::vector<Vec> eta(P.generator_count(), Vec(n, b));
    for (Gen s : pos) {
        Mat t = build_translation(s);
        Gen ss = P.star_of(s);
        pi[ss] = t.transpose(); // inverse of a real signed permutation
        pi[s] = std::move(t);
        // eta(s) = edge at the origin; eta(s*) = -pi(s*) eta(s)
        auto it = eindex.find({unit_word(), s});
        if (it == eindex.end()) throw ContextMismatch("origin edge missing from the ball");
        Vec e0(n, b);
        e0.set(it->second, Scalar::one(b));
        eta[ss] = (pi[ss] * e0).scaled(-Scalar::one(b));
        eta[s] = std::move(e0);
    }
    return Cocycle(std::move(f2), n, cutoff, std::move(pi), std::move(eta));
}

CorepFamily preset_corep_family(PresentationPtr P, int horizon) {
    const Backend b = P->backend();
    const Scalar one = Scalar::one(b);
    std::vector<Corep> coreps;
    const std::string& name = P->name();

    auto monomial_corep = [&](const std::string& label, const NCPoly& p) {
        Corep c;
        c.label = label;
        c.dim = 1;
        c.entries = {p};
        c.q = {one};
        return c;
    };

    if (name == "c-z") {
        Gen u = P->generator_index("u");
        Gen us = P->generator_index("u*");
        for (int k = -horizon; k <= horizon; ++k) {
            Word w(std::size_t(std::abs(k)), k >= 0 ? u : us);
            coreps.push_back(monomial_corep(std::to_string(k), NCPoly::monomial(one, w)));
        }
    } else if (name == "c-f2") {
        for (const auto& w : P->basis_words(horizon))
            coreps.push_back(
                monomial_corep(w.empty() ? "1" : word_to_string(*P, w), NCPoly::monomial(one, w)));
    } else if (name == "u2w" || name == "suq2") {
        Corep triv;
        triv.label = "trivial";
        triv.dim = 1;
        triv.entries = {NCPoly::unit(b)};
        triv.q = {one};
        coreps.push_back(std::move(triv));

        Corep fund;
        fund.label = "fundamental";
        fund.dim = 2;
        if (name == "u2w") {
            Gen a = P->generator_index("a"), bgen = P->generator_index("b");
            Gen as = P->generator_index("a*"), bs = P->generator_index("b*");
            Gen d = P->generator_index("d");
            // U = [[a, -b* d], [b, a* d]]
            NCPoly u11 = NCPoly::generator(b, a);
            NCPoly u12 = NCPoly::monomial(-one, Word{bs, d});
            NCPoly u21 = NCPoly::generator(b, bgen);
            NCPoly u22 = NCPoly::monomial(one, Word{as, d});
            fund.entries = {u11, u12, u21, u22};
            Scalar q1 = eval_coefficient("q1", b, P->parameters());
            Scalar q2 = eval_coefficient("q2", b, P->parameters());
            fund.q = {q1, q2};
        } else {
            Gen a = P->generator_index("a"), c = P->generator_index("c");
            Gen as = P->generator_index("a*"), cs = P->generator_index("c*");
            Scalar q = eval_coefficient("q", b, P->parameters());
            // U = [[a, -q c*], [c, a*]]
            NCPoly u11 = NCPoly::generator(b, a);
            NCPoly u12 = NCPoly::monomial(-q, Word{cs});
            NCPoly u21 = NCPoly::generator(b, c);
            NCPoly u22 = NCPoly::generator(b, as);
            fund.entries = {u11, u12, u21, u22};
            fund.q = {q.inverse(), q};
        }
        coreps.push_back(std::move(fund));
    } else {
        throw ParseError("no built-in corep family for presentation '" + name + "'");
    }
    return CorepFamily(std::move(P), std::move(coreps));
}

} // namespace hopfcorr
