#include "hopfcorr/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

namespace {
constexpr double kDropThreshold = 1e-15;
}

std::string to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

Backend backend_from_string(const std::string& s) {
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    throw ParseError("unknown backend '" + s + "'");
}

Tolerance& tolerance() {
    static Tolerance tol;
    return tol;
}

Scalar Scalar::exact(const mpq_class& re, const mpq_class& im) {
    Scalar s(Backend::Exact);
    s.re_ = re;
    s.im_ = im;
    s.re_.canonicalize();
    s.im_.canonicalize();
    return s;
}

Scalar Scalar::flt(std::complex<double> v) {
    Scalar s(Backend::Float);
    s.f_ = v;
    return s;
}

Scalar Scalar::rational(Backend b, const mpq_class& re, const mpq_class& im) {
    if (b == Backend::Exact) return exact(re, im);
    return flt({re.get_d(), im.get_d()});
}

void Scalar::check_same(const Scalar& o) const {
    if (backend_ != o.backend_)
        throw BackendMismatch("mixed exact and float scalars in one expression");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    if (backend_ == Backend::Exact) return exact(re_ + o.re_, im_ + o.im_);
    return flt(f_ + o.f_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    if (backend_ == Backend::Exact) return exact(re_ - o.re_, im_ - o.im_);
    return flt(f_ - o.f_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    if (backend_ == Backend::Exact)
        return exact(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    return flt(f_ * o.f_);
}

Scalar Scalar::inverse() const {
    if (backend_ == Backend::Exact) {
        mpq_class n = re_ * re_ + im_ * im_;
        if (n == 0) throw HopfError("division by zero scalar");
        return exact(re_ / n, -im_ / n);
    }
    if (f_ == std::complex<double>(0.0, 0.0)) throw HopfError("division by zero scalar");
    return flt(1.0 / f_);
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same(o);
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    if (backend_ == Backend::Exact) return exact(-re_, -im_);
    return flt(-f_);
}

Scalar Scalar::conj() const {
    if (backend_ == Backend::Exact) return exact(re_, -im_);
    return flt(std::conj(f_));
}

Scalar Scalar::real() const {
    if (backend_ == Backend::Exact) return exact(re_);
    return flt({f_.real(), 0.0});
}

Scalar Scalar::imag() const {
    if (backend_ == Backend::Exact) return exact(im_);
    return flt({f_.imag(), 0.0});
}

Scalar Scalar::abs2() const {
    if (backend_ == Backend::Exact) return exact(re_ * re_ + im_ * im_);
    return flt({std::norm(f_), 0.0});
}

bool Scalar::is_zero() const {
    if (backend_ == Backend::Exact) return re_ == 0 && im_ == 0;
    return std::abs(f_.real()) <= kDropThreshold && std::abs(f_.imag()) <= kDropThreshold;
}

bool Scalar::is_one() const {
    if (backend_ == Backend::Exact) return re_ == 1 && im_ == 0;
    return is_zero() ? false : std::abs(f_ - std::complex<double>(1.0, 0.0)) <= kDropThreshold;
}

bool Scalar::is_real() const {
    if (backend_ == Backend::Exact) return im_ == 0;
    return std::abs(f_.imag()) <= kDropThreshold;
}

bool Scalar::is_positive_real() const {
    if (!is_real()) return false;
    if (backend_ == Backend::Exact) return re_ > 0;
    return f_.real() > 0.0;
}

bool Scalar::approx_equal(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    if (a.backend_ == Backend::Exact) return a == b;
    double scale = std::max({1.0, std::abs(a.f_), std::abs(b.f_)});
    return std::abs(a.f_ - b.f_) <= tolerance().eps_num * scale;
}

double Scalar::distance(const Scalar& a, const Scalar& b) {
    return std::abs(a.to_complex() - b.to_complex());
}

bool Scalar::operator==(const Scalar& o) const {
    if (backend_ != o.backend_) return false;
    if (backend_ == Backend::Exact) return re_ == o.re_ && im_ == o.im_;
    return f_ == o.f_;
}

std::complex<double> Scalar::to_complex() const {
    if (backend_ == Backend::Exact) return {re_.get_d(), im_.get_d()};
    return f_;
}

bool rational_pow(const mpq_class& base, const mpq_class& p, mpq_class& out) {
    if (base <= 0) return false;
    // base^(u/v): take the exact v-th root first, then the integer power.
    mpz_class u = p.get_num(), v = p.get_den();
    mpq_class root;
    if (v == 1) {
        root = base;
    } else {
        mpz_class rn, rd;
        if (!mpz_root(rn.get_mpz_t(), base.get_num().get_mpz_t(), v.get_ui())) return false;
        if (!mpz_root(rd.get_mpz_t(), base.get_den().get_mpz_t(), v.get_ui())) return false;
        root = mpq_class(rn, rd);
        root.canonicalize();
    }
    bool neg = u < 0;
    mpz_class e = abs(u);
    mpq_class acc = 1;
    mpq_class sq = root;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc *= sq;
        sq *= sq;
        k >>= 1;
    }
    out = neg ? mpq_class(1) / acc : acc;
    out.canonicalize();
    return true;
}

Scalar Scalar::pow(const mpq_class& p) const {
    if (backend_ == Backend::Float) {
        std::complex<double> r = std::pow(f_, p.get_d());
        return flt(r);
    }
    if (p.get_den() == 1) {
        // Integer power of a complex rational.
        mpz_class e = p.get_num();
        bool neg = e < 0;
        mpz_class k = abs(e);
        Scalar acc = Scalar::one(Backend::Exact);
        Scalar sq = *this;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) acc = acc * sq;
            sq = sq * sq;
            k >>= 1;
        }
        return neg ? acc.inverse() : acc;
    }
    if (!is_positive_real())
        throw IrrationalPower("non-integer power of a non-positive-real exact scalar");
    mpq_class out;
    if (!rational_pow(re_, p, out))
        throw IrrationalPower("exact root of " + re_.get_str() + " with exponent " + p.get_str() +
                              " is irrational");
    return exact(out);
}

namespace {

// One signed numeric part of a literal: rational/decimal body, optional 'i'.
struct Part {
    bool imaginary = false;
    std::string body; // without sign
    int sign = 1;
};

bool is_decimal(const std::string& s) {
    return s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
           s.find('E') != std::string::npos;
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational literal '" + s + "'");
    }
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("malformed numeric literal '" + s + "'");
    }
    if (pos != s.size()) {
        // Allow "a/b" under the float backend.
        if (s[pos] == '/') {
            double den = parse_double(s.substr(pos + 1));
            if (den == 0) throw ParseError("zero denominator in '" + s + "'");
            return v / den;
        }
        throw ParseError("malformed numeric literal '" + s + "'");
    }
    return v;
}

} // namespace

Scalar Scalar::parse(const std::string& text, Backend b) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty scalar literal");

    std::vector<Part> parts;
    std::size_t i = 0;
    while (i < s.size()) {
        Part p;
        if (s[i] == '+' || s[i] == '-') {
            p.sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (!parts.empty()) {
            throw ParseError("expected '+' or '-' in '" + text + "'");
        }
        std::size_t start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        // Keep exponent signs ("1e-3") attached to the body.
        while (i < s.size() && i > start &&
               (s[i - 1] == 'e' || s[i - 1] == 'E')) {
            ++i;
            while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        }
        p.body = s.substr(start, i - start);
        if (p.body.empty()) throw ParseError("dangling sign in '" + text + "'");
        if (p.body.back() == 'i') {
            p.imaginary = true;
            p.body.pop_back();
            if (p.body.empty()) p.body = "1";
        }
        parts.push_back(std::move(p));
    }
    if (parts.size() > 2) throw ParseError("too many parts in scalar literal '" + text + "'");

    bool have_re = false, have_im = false;
    if (b == Backend::Exact) {
        mpq_class re = 0, im = 0;
        for (const auto& p : parts) {
            if (is_decimal(p.body))
                throw BackendMismatch("non-rational literal '" + text + "' under the exact backend");
            mpq_class v = parse_rational(p.body) * p.sign;
            if (p.imaginary) {
                if (have_im) throw ParseError("two imaginary parts in '" + text + "'");
                im = v;
                have_im = true;
            } else {
                if (have_re) throw ParseError("two real parts in '" + text + "'");
                re = v;
                have_re = true;
            }
        }
        return exact(re, im);
    }
    double re = 0, im = 0;
    for (const auto& p : parts) {
        double v = parse_double(p.body) * p.sign;
        if (p.imaginary) {
            if (have_im) throw ParseError("two imaginary parts in '" + text + "'");
            im = v;
            have_im = true;
        } else {
            if (have_re) throw ParseError("two real parts in '" + text + "'");
            re = v;
            have_re = true;
        }
    }
    return flt({re, im});
}

namespace {

std::string double_str(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string Scalar::str() const {
    if (backend_ == Backend::Exact) {
        if (im_ == 0) return re_.get_str();
        std::string s;
        if (re_ != 0) s = re_.get_str();
        std::string im = im_.get_str();
        if (!s.empty() && im[0] != '-') s += "+";
        return s + im + "i";
    }
    if (is_real()) return double_str(f_.real());
    std::string s;
    if (f_.real() != 0.0) s = double_str(f_.real());
    std::string im = double_str(f_.imag());
    if (!s.empty() && im[0] != '-') s += "+";
    return s + im + "i";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "indeterminate";
    }
}

} // namespace hopfcorr
