#pragma once

#include <optional>
#include <vector>

#include "hopfcorr/poly.hpp"
#include "hopfcorr/report.hpp"

namespace hopfcorr {

struct Rule {
    Word lhs;
    NCPoly rhs;
};

/// Word rewriting system under the degree-lexicographic order. Every rule
/// strictly decreases the order (validated at construction), so exhaustive
/// reduction terminates and normal_form is total.
class RewriteSystem {
public:
    RewriteSystem() : ngens_(0), backend_(Backend::Exact) {}
    /// Throws RuleOrderViolation if some rhs monomial is not below its lhs.
    RewriteSystem(uint32_t ngens, Backend b, std::vector<Rule> rules);

    uint32_t generator_count() const { return ngens_; }
    Backend backend() const { return backend_; }
    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t longest_lhs() const;

    /// Leftmost redex: (rule index, position), or nullopt if irreducible.
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const;
    bool is_irreducible(const Word& w) const { return !find_redex(w).has_value(); }
    /// True when appending one letter to an irreducible word kept it
    /// irreducible (only suffix matches can appear).
    bool suffix_irreducible(const Word& w) const;

    NCPoly normal_form(const NCPoly& p) const;
    NCPoly normal_form(const Word& w) const {
        return normal_form(NCPoly::monomial(Scalar::one(backend_), w));
    }

    /// Tests convergence of every overlap and inclusion ambiguity among
    /// rule left-hand sides, on critical words up to max_overlap letters.
    Report check_local_confluence(std::size_t max_overlap) const;

    /// All irreducible words of degree <= max_deg, in deg-lex order.
    std::vector<Word> basis_words(int max_deg) const;

private:
    NCPoly reduce_once(const Word& w, std::size_t rule, std::size_t pos) const;

    uint32_t ngens_;
    Backend backend_;
    std::vector<Rule> rules_;
};

} // namespace hopfcorr
