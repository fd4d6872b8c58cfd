#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hopfcorr/scalar.hpp"

namespace hopfcorr {

using Gen = uint32_t;

/// Monomial: a finite sequence of generator indices. The empty word is the
/// algebra unit. Generator indices coincide with their rank in the term
/// order, so the degree-lexicographic comparison below is context-free.
using Word = std::vector<Gen>;

inline Word unit_word() { return {}; }

struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

inline Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

/// Noncommutative polynomial: finite map word -> nonzero coefficient.
/// Whether the stored words are in normal form is the owner's contract
/// (RewriteSystem::normal_form re-establishes it).
class NCPoly {
public:
    NCPoly() : backend_(Backend::Exact) {}
    explicit NCPoly(Backend b) : backend_(b) {}

    static NCPoly zero(Backend b) { return NCPoly(b); }
    static NCPoly unit(Backend b) { return monomial(Scalar::one(b), unit_word()); }
    static NCPoly monomial(const Scalar& c, const Word& w);
    static NCPoly generator(Backend b, Gen g) {
        return monomial(Scalar::one(b), Word{g});
    }

    Backend backend() const { return backend_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Word, Scalar, WordLess>& terms() const { return terms_; }

    Scalar coeff(const Word& w) const;
    void add_term(const Word& w, const Scalar& c);

    NCPoly operator+(const NCPoly& o) const;
    NCPoly operator-(const NCPoly& o) const;
    NCPoly scaled(const Scalar& c) const;
    NCPoly operator-() const { return scaled(-Scalar::one(backend_)); }

    /// Raw concatenation product (no normalization).
    NCPoly concat_mul(const NCPoly& o) const;

    int degree() const; // max word length, -1 for zero
    bool approx_equal(const NCPoly& o) const;
    static double distance(const NCPoly& a, const NCPoly& b);

    std::string str(const std::vector<std::string>& gen_names) const;

private:
    Backend backend_;
    std::map<Word, Scalar, WordLess> terms_;
};

/// Element of the R-fold tensor power, componentwise normal form.
template <std::size_t R>
class TensorPoly {
public:
    using Key = std::array<Word, R>;

    TensorPoly() : backend_(Backend::Exact) {}
    explicit TensorPoly(Backend b) : backend_(b) {}

    static TensorPoly unit(Backend b) {
        TensorPoly t(b);
        Key k;
        k.fill(unit_word());
        t.add_term(k, Scalar::one(b));
        return t;
    }

    Backend backend() const { return backend_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Key, Scalar>& terms() const { return terms_; }

    Scalar coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar::zero(backend_) : it->second;
    }

    void add_term(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TensorPoly operator+(const TensorPoly& o) const {
        TensorPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }

    TensorPoly operator-(const TensorPoly& o) const {
        TensorPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }

    TensorPoly scaled(const Scalar& c) const {
        TensorPoly r(backend_);
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.add_term(k, v * c);
        return r;
    }

    bool approx_equal(const TensorPoly& o) const {
        TensorPoly d = *this - o;
        for (const auto& [k, c] : d.terms_)
            if (!Scalar::approx_equal(c, Scalar::zero(backend_))) return false;
        return true;
    }

    static double distance(const TensorPoly& a, const TensorPoly& b) {
        TensorPoly d = a - b;
        double m = 0;
        for (const auto& [k, c] : d.terms_) m = std::max(m, c.abs_double());
        return m;
    }

private:
    Backend backend_;
    std::map<Key, Scalar> terms_;
};

using Tensor2 = TensorPoly<2>;
using Tensor3 = TensorPoly<3>;

} // namespace hopfcorr
