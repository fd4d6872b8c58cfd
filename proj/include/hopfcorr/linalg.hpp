#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfcorr/scalar.hpp"

namespace hopfcorr {

/// Sparse vector with explicit dimension and backend.
class Vec {
public:
    Vec() : dim_(0), backend_(Backend::Exact) {}
    Vec(uint32_t dim, Backend b) : dim_(dim), backend_(b) {}

    uint32_t dim() const { return dim_; }
    Backend backend() const { return backend_; }
    bool is_zero() const { return e_.empty(); }
    std::size_t nnz() const { return e_.size(); }

    Scalar get(uint32_t i) const;
    void set(uint32_t i, const Scalar& v);
    const std::map<uint32_t, Scalar>& entries() const { return e_; }

    Vec operator+(const Vec& o) const;
    Vec operator-(const Vec& o) const;
    Vec scaled(const Scalar& c) const;
    Vec& add_scaled(const Vec& o, const Scalar& c);
    Vec conj() const;

    /// Plain dot with conjugation on the left slot (inner products are
    /// linear on the right).
    Scalar dot(const Vec& o) const;

    double max_abs() const;
    bool approx_zero() const;
    static double distance(const Vec& a, const Vec& b);
    static bool approx_equal(const Vec& a, const Vec& b);

    static Vec unit(uint32_t dim, Backend b, uint32_t i);
    std::string str() const;

private:
    uint32_t dim_;
    Backend backend_;
    std::map<uint32_t, Scalar> e_;
};

/// Column-sparse matrix over Scalar.
class Mat {
public:
    Mat() : rows_(0), cols_(0), backend_(Backend::Exact) {}
    Mat(uint32_t rows, uint32_t cols, Backend b)
        : rows_(rows), cols_(cols), backend_(b), col_(cols) {}

    static Mat identity(uint32_t n, Backend b);
    static Mat from_dense(Backend b, const std::vector<std::vector<Scalar>>& rows);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    Backend backend() const { return backend_; }
    std::size_t nnz() const;

    Scalar get(uint32_t i, uint32_t j) const;
    void set(uint32_t i, uint32_t j, const Scalar& v);
    const std::map<uint32_t, Scalar>& column(uint32_t j) const { return col_[j]; }
    void set_column(uint32_t j, const Vec& v);
    Vec column_vec(uint32_t j) const;

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat scaled(const Scalar& c) const;
    Mat adjoint() const;   // conjugate transpose
    Mat transpose() const;
    Mat conj() const;

    bool is_identity() const;
    bool approx_equal(const Mat& o) const;
    static double distance(const Mat& a, const Mat& b);
    double max_abs() const;
    bool is_hermitian() const;

    std::string str() const;

private:
    uint32_t rows_, cols_;
    Backend backend_;
    std::vector<std::map<uint32_t, Scalar>> col_; // col_[j][i]
};

/// Incremental Gaussian span tracker. Keeps the inserted independent
/// vectors ("members") and expresses later vectors as coordinates over them.
class SpanBasis {
public:
    explicit SpanBasis(uint32_t dim, Backend b) : dim_(dim), backend_(b) {}

    /// Adds v. Returns nullopt if v was independent (v joins the basis),
    /// otherwise the coordinates of v over the current members.
    std::optional<std::vector<Scalar>> insert(const Vec& v);
    /// Coordinates over members if v lies in the span, nullopt otherwise.
    std::optional<std::vector<Scalar>> coordinates(const Vec& v) const;
    bool contains(const Vec& v) const { return coordinates(v).has_value(); }

    uint32_t dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Vec>& members() const { return members_; }

private:
    // reduced_[k] has pivot pivot_[k] normalized to 1 and is zero at all
    // other pivots; rep_[k] expresses reduced_[k] over members_.
    std::pair<Vec, std::vector<Scalar>> reduce(const Vec& v) const;

    uint32_t dim_;
    Backend backend_;
    std::vector<Vec> members_;
    std::vector<Vec> reduced_;
    std::vector<uint32_t> pivot_;
    std::vector<std::vector<Scalar>> rep_;
};

struct LdltResult {
    bool psd = false;
    uint32_t rank = 0;
    std::vector<uint32_t> pivots; // in elimination order
    double min_diag = 0.0;        // most negative diagonal seen (approx)
    std::string witness;          // offending entry when not PSD
};

/// Complete-diagonal-pivoting LDL* positive-semidefiniteness certificate.
/// Exact backend: rigorous. Float backend: pivots below eps_psd are
/// treated as zero.
LdltResult ldlt_psd(const Mat& G);

/// Null space basis.
std::vector<Vec> kernel(const Mat& A);

/// Basis of the intersection of kernels of the given matrices.
std::vector<Vec> intersect_kernels(const std::vector<Mat>& mats, Backend b);

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi on the
/// real symmetric embedding. Approximate (double) on both backends;
/// used for reporting and Float-backend PSD slack.
std::vector<double> hermitian_eigenvalues(const Mat& H);

/// Solves A x = b for square nonsingular A (throws HopfError if singular).
Vec solve_square(const Mat& A, const Vec& b);

/// M-orthogonal projector onto span(basis); metric must be Hermitian
/// positive definite on the span.
Mat projector_onto(const std::vector<Vec>& basis, const Mat& metric);

} // namespace hopfcorr
