#include "hopfcorr/rewrite.hpp"

#include <algorithm>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

namespace {

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << "g" << w[i];
    return os.str();
}

} // namespace

RewriteSystem::RewriteSystem(uint32_t ngens, Backend b, std::vector<Rule> rules)
    : ngens_(ngens), backend_(b), rules_(std::move(rules)) {
    WordLess less;
    for (const auto& r : rules_) {
        if (r.lhs.empty())
            throw RuleOrderViolation("empty left-hand side");
        for (Gen g : r.lhs)
            if (g >= ngens_) throw ContextMismatch("rule lhs uses undeclared generator");
        for (const auto& [w, c] : r.rhs.terms()) {
            for (Gen g : w)
                if (g >= ngens_) throw ContextMismatch("rule rhs uses undeclared generator");
            if (!less(w, r.lhs))
                throw RuleOrderViolation("rhs monomial " + word_str(w) +
                                         " is not below lhs " + word_str(r.lhs));
        }
        if (r.rhs.backend() != backend_)
            throw BackendMismatch("rule rhs backend differs from system backend");
    }
}

std::size_t RewriteSystem::longest_lhs() const {
    std::size_t m = 0;
    for (const auto& r : rules_) m = std::max(m, r.lhs.size());
    return m;
}

std::optional<std::pair<std::size_t, std::size_t>> RewriteSystem::find_redex(
    const Word& w) const {
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (std::size_t r = 0; r < rules_.size(); ++r) {
            const Word& l = rules_[r].lhs;
            if (pos + l.size() > w.size()) continue;
            if (std::equal(l.begin(), l.end(), w.begin() + pos)) return {{r, pos}};
        }
    }
    return std::nullopt;
}

bool RewriteSystem::suffix_irreducible(const Word& w) const {
    for (const auto& r : rules_) {
        const Word& l = r.lhs;
        if (l.size() > w.size()) continue;
        if (std::equal(l.begin(), l.end(), w.end() - l.size())) return false;
    }
    return true;
}

NCPoly RewriteSystem::reduce_once(const Word& w, std::size_t rule, std::size_t pos) const {
    const Rule& r = rules_[rule];
    Word prefix(w.begin(), w.begin() + pos);
    Word suffix(w.begin() + pos + r.lhs.size(), w.end());
    NCPoly out(backend_);
    for (const auto& [m, c] : r.rhs.terms()) out.add_term(concat(concat(prefix, m), suffix), c);
    return out;
}

NCPoly RewriteSystem::normal_form(const NCPoly& p) const {
    NCPoly result(backend_);
    // worklist keyed by word so parallel reductions of the same monomial merge
    std::map<Word, Scalar, WordLess> work(p.terms().begin(), p.terms().end());
    while (!work.empty()) {
        auto it = std::prev(work.end()); // largest first: strictly decreasing
        Word w = it->first;
        Scalar c = it->second;
        work.erase(it);
        if (c.is_zero()) continue;
        auto redex = find_redex(w);
        if (!redex) {
            result.add_term(w, c);
            continue;
        }
        NCPoly stepped = reduce_once(w, redex->first, redex->second);
        for (const auto& [m, v] : stepped.terms()) {
            auto jt = work.find(m);
            if (jt == work.end()) {
                Scalar add = v * c;
                if (!add.is_zero()) work.emplace(m, add);
            } else {
                jt->second += v * c;
                if (jt->second.is_zero()) work.erase(jt);
            }
        }
    }
    return result;
}

Report RewriteSystem::check_local_confluence(std::size_t max_overlap) const {
    Report rep("check_local_confluence");
    if (max_overlap < longest_lhs())
        throw HopfError("max_overlap below the longest rule lhs");
    std::size_t ambiguities = 0;

    auto test = [&](const Word& crit, std::size_t r1, std::size_t pos1, std::size_t r2,
                    std::size_t pos2, const char* kind) {
        ++ambiguities;
        NCPoly a = normal_form(reduce_once(crit, r1, pos1));
        NCPoly b = normal_form(reduce_once(crit, r2, pos2));
        if (!a.approx_equal(b)) {
            rep.add(std::string(kind) + " ambiguity", false, NCPoly::distance(a, b),
                    "critical word " + word_str(crit) + " via rules " + std::to_string(r1) +
                        "," + std::to_string(r2));
        }
    };

    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const Word& li = rules_[i].lhs;
        for (std::size_t j = 0; j < rules_.size(); ++j) {
            const Word& lj = rules_[j].lhs;
            // overlap: proper suffix of li equals proper prefix of lj
            for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
                if (!std::equal(li.end() - k, li.end(), lj.begin())) continue;
                Word crit = li;
                crit.insert(crit.end(), lj.begin() + k, lj.end());
                if (crit.size() > max_overlap) continue;
                test(crit, i, 0, j, li.size() - k, "overlap");
            }
            // inclusion: lj occurs inside li (including equal lhs of distinct rules)
            if (i != j && lj.size() <= li.size() && li.size() <= max_overlap) {
                for (std::size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                    if (!std::equal(lj.begin(), lj.end(), li.begin() + pos)) continue;
                    if (li.size() == lj.size() && i < j) break; // handled once from the larger index
                    test(li, i, 0, j, pos, "inclusion");
                }
            }
        }
    }
    rep.note("ambiguities_checked", std::to_string(ambiguities));
    if (rep.checks().empty()) rep.add("locally_confluent", true);
    return rep;
}

std::vector<Word> RewriteSystem::basis_words(int max_deg) const {
    std::vector<Word> out{unit_word()};
    std::vector<Word> frontier{unit_word()};
    for (int d = 1; d <= max_deg; ++d) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            for (Gen g = 0; g < ngens_; ++g) {
                Word cand = w;
                cand.push_back(g);
                // prefix is irreducible, so only suffix matches can appear
                if (suffix_irreducible(cand)) next.push_back(std::move(cand));
            }
        }
        std::sort(next.begin(), next.end(), WordLess{});
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

} // namespace hopfcorr
