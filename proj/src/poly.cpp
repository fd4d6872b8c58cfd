#include "hopfcorr/poly.hpp"

#include <algorithm>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

NCPoly NCPoly::monomial(const Scalar& c, const Word& w) {
    NCPoly p(c.backend());
    p.add_term(w, c);
    return p;
}

Scalar NCPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar::zero(backend_) : it->second;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
    if (c.backend() != backend_)
        throw BackendMismatch("coefficient backend differs from polynomial backend");
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
    NCPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
    NCPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
    NCPoly r(backend_);
    if (c.is_zero()) return r;
    for (const auto& [w, v] : terms_) r.add_term(w, v * c);
    return r;
}

NCPoly NCPoly::concat_mul(const NCPoly& o) const {
    NCPoly r(backend_);
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) r.add_term(concat(w1, w2), c1 * c2);
    return r;
}

int NCPoly::degree() const {
    if (terms_.empty()) return -1;
    return int(terms_.rbegin()->first.size());
}

bool NCPoly::approx_equal(const NCPoly& o) const {
    NCPoly d = *this - o;
    for (const auto& [w, c] : d.terms())
        if (!Scalar::approx_equal(c, Scalar::zero(backend_))) return false;
    return true;
}

double NCPoly::distance(const NCPoly& a, const NCPoly& b) {
    NCPoly d = a - b;
    double m = 0;
    for (const auto& [w, c] : d.terms()) m = std::max(m, c.abs_double());
    return m;
}

std::string NCPoly::str(const std::vector<std::string>& gen_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.str() << ")";
        for (Gen g : w) os << " " << (g < gen_names.size() ? gen_names[g] : "?");
        first = false;
    }
    return os.str();
}

} // namespace hopfcorr
