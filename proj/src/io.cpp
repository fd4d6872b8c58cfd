#include "hopfcorr/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

Scalar eval_coefficient(const std::string& text, Backend b,
                        const std::map<std::string, std::string>& params) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ParseError("empty coefficient");
    bool has_param = false;
    for (const auto& [k, v] : params)
        if (s.find(k) != std::string::npos) has_param = true;
    if (!has_param) return Scalar::parse(s, b);

    Scalar acc = Scalar::one(b);
    std::size_t i = 0;
    if (s[0] == '-') {
        acc = -acc;
        i = 1;
    } else if (s[0] == '+') {
        i = 1;
    }
    while (i < s.size()) {
        std::size_t star = s.find('*', i);
        std::string factor = s.substr(i, star == std::string::npos ? star : star - i);
        i = (star == std::string::npos) ? s.size() : star + 1;
        if (factor.empty()) throw ParseError("empty factor in coefficient '" + text + "'");
        mpq_class expo = 1;
        std::size_t caret = factor.find('^');
        std::string base = factor;
        if (caret != std::string::npos) {
            base = factor.substr(0, caret);
            try {
                expo = mpq_class(factor.substr(caret + 1));
                expo.canonicalize();
            } catch (const std::invalid_argument&) {
                throw ParseError("bad exponent in coefficient '" + text + "'");
            }
        }
        Scalar value(b);
        if (!base.empty() && (std::isalpha(static_cast<unsigned char>(base[0])))) {
            auto it = params.find(base);
            if (it == params.end())
                throw ParseError("unknown parameter '" + base + "' in coefficient '" + text +
                                 "'");
            value = Scalar::parse(it->second, b);
        } else {
            value = Scalar::parse(base, b);
        }
        acc = acc * value.pow(expo);
    }
    return acc;
}

std::string word_to_string(const Presentation& P, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += P.generators().at(w[i]).name;
    }
    return s;
}

Word word_from_string(const Presentation& P, const std::string& s) {
    Word w;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) w.push_back(P.generator_index(tok));
    return w;
}

namespace {

json poly_to_json(const Presentation& P, const NCPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms()) {
        json words = json::array();
        for (Gen g : w) words.push_back(P.generators().at(g).name);
        terms.push_back({{"coef", c.str()}, {"word", words}});
    }
    return terms;
}

NCPoly poly_from_json(const Presentation& P, const json& terms,
                      const std::map<std::string, std::string>& params) {
    NCPoly p(P.backend());
    for (const auto& t : terms) {
        Scalar c = eval_coefficient(t.at("coef").get<std::string>(), P.backend(), params);
        Word w;
        for (const auto& g : t.at("word")) w.push_back(P.generator_index(g.get<std::string>()));
        p.add_term(w, c);
    }
    return p;
}

json vec_to_json(const Vec& v) {
    // dense when small, sparse otherwise
    if (v.dim() <= 16) {
        json arr = json::array();
        for (uint32_t i = 0; i < v.dim(); ++i) arr.push_back(v.get(i).str());
        return arr;
    }
    json entries = json::array();
    for (const auto& [i, s] : v.entries()) entries.push_back(json::array({i, s.str()}));
    return {{"dim", v.dim()}, {"entries", entries}};
}

Vec vec_from_json(const json& j, Backend b, uint32_t expect_dim) {
    if (j.is_array()) {
        Vec v(uint32_t(j.size()), b);
        for (uint32_t i = 0; i < j.size(); ++i)
            v.set(i, Scalar::parse(j[i].get<std::string>(), b));
        if (expect_dim && v.dim() != expect_dim)
            throw ContextMismatch("vector has unexpected dimension");
        return v;
    }
    Vec v(j.at("dim").get<uint32_t>(), b);
    for (const auto& e : j.at("entries"))
        v.set(e.at(0).get<uint32_t>(), Scalar::parse(e.at(1).get<std::string>(), b));
    if (expect_dim && v.dim() != expect_dim)
        throw ContextMismatch("vector has unexpected dimension");
    return v;
}

json mat_to_json(const Mat& m) {
    if (m.rows() <= 16 && m.cols() <= 16) {
        json rows = json::array();
        for (uint32_t i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (uint32_t j = 0; j < m.cols(); ++j) row.push_back(m.get(i, j).str());
            rows.push_back(row);
        }
        return rows;
    }
    json entries = json::array();
    for (uint32_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j)) entries.push_back(json::array({i, j, v.str()}));
    return {{"dim", json::array({m.rows(), m.cols()})}, {"entries", entries}};
}

Mat mat_from_json(const json& j, Backend b, uint32_t expect_dim) {
    if (j.is_array()) {
        uint32_t r = uint32_t(j.size());
        uint32_t c = r ? uint32_t(j[0].size()) : 0;
        Mat m(r, c, b);
        for (uint32_t i = 0; i < r; ++i)
            for (uint32_t k = 0; k < c; ++k)
                m.set(i, k, Scalar::parse(j[i][k].get<std::string>(), b));
        if (expect_dim && (r != expect_dim || c != expect_dim))
            throw ContextMismatch("matrix has unexpected dimensions");
        return m;
    }
    Mat m(j.at("dim")[0].get<uint32_t>(), j.at("dim")[1].get<uint32_t>(), b);
    for (const auto& e : j.at("entries"))
        m.set(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>(),
              Scalar::parse(e.at(2).get<std::string>(), b));
    if (expect_dim && (m.rows() != expect_dim || m.cols() != expect_dim))
        throw ContextMismatch("matrix has unexpected dimensions");
    return m;
}

} // namespace

json presentation_to_json(const Presentation& P) {
    json j;
    j["name"] = P.name();
    j["backend"] = to_string(P.backend());
    j["parameters"] = P.parameters();
    json gens = json::array();
    json order = json::array();
    for (const auto& g : P.generators()) {
        gens.push_back({{"name", g.name}, {"star", P.generators().at(g.star).name}});
        order.push_back(g.name);
    }
    j["generators"] = gens;
    j["order"] = order;
    json rules = json::array();
    for (const auto& r : P.rewrite_system().rules()) {
        json lhs = json::array();
        for (Gen g : r.lhs) lhs.push_back(P.generators().at(g).name);
        rules.push_back({{"lhs", lhs}, {"rhs", poly_to_json(P, r.rhs)}});
    }
    j["rules"] = rules;
    json delta, eps, anti, alpha, tau;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        const std::string& name = P.generators()[g].name;
        json dterms = json::array();
        for (const auto& [k, c] : P.delta_images()[g].terms()) {
            json left = json::array(), right = json::array();
            for (Gen x : k[0]) left.push_back(P.generators().at(x).name);
            for (Gen x : k[1]) right.push_back(P.generators().at(x).name);
            dterms.push_back({{"coef", c.str()}, {"left", left}, {"right", right}});
        }
        delta[name] = dterms;
        eps[name] = P.epsilon_images()[g].str();
        anti[name] = poly_to_json(P, P.antipode_images()[g]);
        alpha[name] = P.alpha_scalings()[g].str();
        tau[name] = P.tau_scalings()[g].str();
    }
    j["hopf"] = {{"delta", delta}, {"epsilon", eps}, {"antipode", anti}};
    j["alpha"] = alpha;
    if (!P.tau_is_trivial()) j["tau"] = tau;
    return j;
}

PresentationPtr presentation_from_json(const json& j,
                                       const std::map<std::string, std::string>& extra_params,
                                       const std::string& backend_override) {
    std::map<std::string, std::string> params;
    if (j.contains("parameters"))
        for (const auto& [k, v] : j.at("parameters").items())
            params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    for (const auto& [k, v] : extra_params) params[k] = v;

    Backend backend;
    std::string bspec = j.value("backend", "auto");
    if (!backend_override.empty()) bspec = backend_override;
    if (bspec == "auto") {
        backend = Backend::Exact;
        for (const auto& [k, v] : params) {
            try {
                Scalar::parse(v, Backend::Exact);
            } catch (const HopfError&) {
                backend = Backend::Float;
            }
        }
    } else {
        backend = backend_from_string(bspec);
    }

    // generator order defines the index ranks
    std::vector<std::string> order;
    for (const auto& n : j.at("order")) order.push_back(n.get<std::string>());
    std::map<std::string, Gen> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = Gen(i);
    if (index.size() != order.size()) throw ParseError("duplicate generator in order");

    std::vector<GenInfo> gens(order.size());
    std::size_t seen = 0;
    for (const auto& g : j.at("generators")) {
        std::string name = g.at("name").get<std::string>();
        std::string star = g.at("star").get<std::string>();
        if (!index.count(name) || !index.count(star))
            throw ParseError("generator/star not listed in order: " + name);
        gens[index[name]] = GenInfo{name, index[star]};
        ++seen;
    }
    if (seen != order.size()) throw ParseError("generators array does not cover the order");

    auto widx = [&](const json& arr) {
        Word w;
        for (const auto& n : arr) {
            auto it = index.find(n.get<std::string>());
            if (it == index.end()) throw ParseError("unknown generator " + n.dump());
            w.push_back(it->second);
        }
        return w;
    };
    auto raw_poly = [&](const json& terms) {
        NCPoly p(backend);
        for (const auto& t : terms)
            p.add_term(widx(t.at("word")),
                       eval_coefficient(t.at("coef").get<std::string>(), backend, params));
        return p;
    };

    std::vector<Rule> rules;
    for (const auto& r : j.at("rules")) rules.push_back({widx(r.at("lhs")), raw_poly(r.at("rhs"))});
    RewriteSystem rs(uint32_t(order.size()), backend, std::move(rules));

    const json& hopf = j.at("hopf");
    std::vector<Tensor2> delta(order.size(), Tensor2(backend));
    std::vector<Scalar> eps(order.size(), Scalar::zero(backend));
    std::vector<NCPoly> anti(order.size(), NCPoly(backend));
    std::vector<Scalar> alpha(order.size(), Scalar::one(backend));
    std::vector<Scalar> tau(order.size(), Scalar::one(backend));
    for (const auto& name : order) {
        Gen g = index[name];
        Tensor2 d(backend);
        for (const auto& t : hopf.at("delta").at(name)) {
            Scalar c = eval_coefficient(t.at("coef").get<std::string>(), backend, params);
            d.add_term({widx(t.at("left")), widx(t.at("right"))}, c);
        }
        delta[g] = d;
        eps[g] = eval_coefficient(hopf.at("epsilon").at(name).get<std::string>(), backend,
                                  params);
        anti[g] = raw_poly(hopf.at("antipode").at(name));
        alpha[g] = eval_coefficient(j.at("alpha").at(name).get<std::string>(), backend, params);
        if (j.contains("tau"))
            tau[g] = eval_coefficient(j.at("tau").at(name).get<std::string>(), backend, params);
    }
    return std::make_shared<Presentation>(j.at("name").get<std::string>(), backend,
                                          std::move(gens), std::move(rs), std::move(delta),
                                          std::move(eps), std::move(anti), std::move(alpha),
                                          std::move(tau), params);
}

json cocycle_to_json(const Cocycle& c) {
    const Presentation& P = c.algebra();
    json j;
    j["presentation"] = P.name();
    j["dim"] = c.dim();
    j["cutoff"] = c.cutoff();
    json pi, eta;
    for (std::size_t g = 0; g < P.generator_count(); ++g) {
        pi[P.generators()[g].name] = mat_to_json(c.pi_images()[g]);
        eta[P.generators()[g].name] = vec_to_json(c.eta_images()[g]);
    }
    j["pi"] = pi;
    j["eta"] = eta;
    if (!c.metric_is_identity()) j["metric"] = mat_to_json(c.metric());
    return j;
}

Cocycle cocycle_from_json(const json& j, PresentationPtr P) {
    if (j.at("presentation").get<std::string>() != P->name())
        throw ContextMismatch("cocycle references presentation '" +
                              j.at("presentation").get<std::string>() + "', active is '" +
                              P->name() + "'");
    const Backend b = P->backend();
    uint32_t dim = j.at("dim").get<uint32_t>();
    int cutoff = j.at("cutoff").get<int>();
    std::vector<Mat> pi;
    std::vector<Vec> eta;
    for (const auto& g : P->generators()) {
        pi.push_back(mat_from_json(j.at("pi").at(g.name), b, dim));
        eta.push_back(vec_from_json(j.at("eta").at(g.name), b, dim));
    }
    std::optional<Mat> metric;
    if (j.contains("metric")) metric = mat_from_json(j.at("metric"), b, dim);
    return Cocycle(std::move(P), dim, cutoff, std::move(pi), std::move(eta), std::move(metric));
}

json functional_to_json(const GeneratingFunctional& L) {
    const Presentation& P = L.algebra();
    json j;
    j["presentation"] = P.name();
    j["cutoff"] = L.cutoff();
    json vals;
    for (const auto& [w, v] : L.values()) vals[word_to_string(P, w)] = v.str();
    j["values"] = vals;
    return j;
}

GeneratingFunctional functional_from_json(const json& j, PresentationPtr P) {
    if (j.at("presentation").get<std::string>() != P->name())
        throw ContextMismatch("functional references presentation '" +
                              j.at("presentation").get<std::string>() + "', active is '" +
                              P->name() + "'");
    int cutoff = j.at("cutoff").get<int>();
    std::map<Word, Scalar, WordLess> values;
    for (const auto& [ws, v] : j.at("values").items())
        values.emplace(word_from_string(*P, ws), Scalar::parse(v.get<std::string>(), P->backend()));
    // the stored range must be complete: every basis word up to 2*cutoff
    for (const auto& w : P->basis_words(2 * cutoff))
        if (!values.count(w))
            throw ParseError("functional file misses the value at word '" +
                             word_to_string(*P, w) + "' (stored range is degree <= " +
                             std::to_string(2 * cutoff) + ")");
    return GeneratingFunctional(std::move(P), cutoff, std::move(values));
}

json coreps_to_json(const CorepFamily& F) {
    const Presentation& P = *F.presentation();
    json j;
    j["presentation"] = P.name();
    json arr = json::array();
    for (const auto& U : F.coreps()) {
        json rows = json::array();
        for (uint32_t i = 0; i < U.dim; ++i) {
            json row = json::array();
            for (uint32_t k = 0; k < U.dim; ++k) row.push_back(poly_to_json(P, U.at(i, k)));
            rows.push_back(row);
        }
        json q = json::array();
        for (const auto& s : U.q) q.push_back(s.str());
        arr.push_back({{"label", U.label}, {"dim", U.dim}, {"U", rows}, {"Q", q}});
    }
    j["coreps"] = arr;
    return j;
}

CorepFamily coreps_from_json(const json& j, PresentationPtr P) {
    if (j.at("presentation").get<std::string>() != P->name())
        throw ContextMismatch("corep family references presentation '" +
                              j.at("presentation").get<std::string>() + "', active is '" +
                              P->name() + "'");
    std::vector<Corep> coreps;
    for (const auto& u : j.at("coreps")) {
        Corep c;
        c.label = u.at("label").get<std::string>();
        c.dim = u.at("dim").get<uint32_t>();
        for (const auto& row : u.at("U"))
            for (const auto& cell : row)
                c.entries.push_back(poly_from_json(*P, cell, P->parameters()));
        for (const auto& q : u.at("Q"))
            c.q.push_back(eval_coefficient(q.get<std::string>(), P->backend(), P->parameters()));
        if (c.entries.size() != std::size_t(c.dim) * c.dim)
            throw ParseError("corep " + c.label + " has a ragged U matrix");
        coreps.push_back(std::move(c));
    }
    return CorepFamily(std::move(P), std::move(coreps));
}

json report_to_json(const Report& r) {
    json j;
    j["command"] = r.command();
    j["status"] = to_string(r.status());
    json checks = json::array();
    for (const auto& c : r.checks()) {
        json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (c.residual) e["residual"] = *c.residual;
        if (!c.witness.empty()) e["witness"] = c.witness;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["notes"] = r.notes();
    j["provenance"] = r.provenance();
    return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void save_file(const std::string& path, const json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw HopfError("cannot write file " + path);
    os << canonical_dump(j);
}

json load_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot read file " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return "missing";
    std::ostringstream ss;
    ss << is.rdbuf();
    return fnv1a_hex(ss.str());
}

} // namespace hopfcorr
