#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace hopfcorr {

enum class Backend { Exact, Float };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

/// Comparison slacks. eps_num is the scale-aware equality tolerance,
/// eps_psd the eigenvalue slack for positive-semidefiniteness checks.
/// The Exact backend ignores both.
struct Tolerance {
    double eps_num = 1e-9;
    double eps_psd = 1e-8;
};

/// Process-wide tolerance, set once at startup (CLI flags / test fixtures).
Tolerance& tolerance();

/// Element of the coefficient field: a complex rational (Exact) or a
/// complex double (Float). Immutable value semantics; the two backends
/// never mix inside one expression (BackendMismatch otherwise).
class Scalar {
public:
    Scalar() : Scalar(Backend::Exact) {}
    explicit Scalar(Backend b) : backend_(b), f_(0.0, 0.0) {}
    Scalar(Backend b, long n) : backend_(b), f_(double(n), 0.0) {
        if (b == Backend::Exact) re_ = n;
    }

    static Scalar zero(Backend b) { return Scalar(b); }
    static Scalar one(Backend b) { return Scalar(b, 1); }
    static Scalar integer(Backend b, long n) { return Scalar(b, n); }
    static Scalar exact(const mpq_class& re, const mpq_class& im = 0);
    static Scalar flt(std::complex<double> v);
    static Scalar rational(Backend b, const mpq_class& re, const mpq_class& im = 0);

    /// Parses literals like "1", "-1/2+2i", "2i", "-i", "0.25" (Float only).
    static Scalar parse(const std::string& text, Backend b);

    Backend backend() const { return backend_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // division by zero throws
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar conj() const;
    Scalar real() const;
    Scalar imag() const;
    /// |x|^2, same backend (always a nonnegative real scalar).
    Scalar abs2() const;
    Scalar inverse() const;

    /// Structural zero: exact == 0, float below the drop threshold (1e-15).
    bool is_zero() const;
    bool is_one() const;
    bool is_real() const;
    /// Real and strictly positive (exact sign test / float > 0).
    bool is_positive_real() const;

    /// Exact: identity. Float: |a-b| <= eps_num * max(1, |a|, |b|).
    static bool approx_equal(const Scalar& a, const Scalar& b);
    /// |a-b| as a double (exact values converted), for residual reporting.
    static double distance(const Scalar& a, const Scalar& b);

    /// x^p for rational p. Exact backend requires the result to be rational
    /// (integer p always works; otherwise the base must be a positive real
    /// perfect power), else IrrationalPower.
    Scalar pow(const mpq_class& p) const;

    std::complex<double> to_complex() const;
    double abs_double() const { return std::abs(to_complex()); }

    /// Exact only: the rational real/imaginary parts.
    const mpq_class& qre() const { return re_; }
    const mpq_class& qim() const { return im_; }

    std::string str() const;

    bool operator==(const Scalar& o) const; // structural (exact on both backends)
    bool operator!=(const Scalar& o) const { return !(*this == o); }

private:
    void check_same(const Scalar& o) const;

    Backend backend_;
    mpq_class re_, im_;          // Exact payload
    std::complex<double> f_;     // Float payload
};

/// x^p where x is an exact positive rational; nullopt when the exact
/// root does not exist in the rationals.
bool rational_pow(const mpq_class& base, const mpq_class& p, mpq_class& out);

} // namespace hopfcorr
