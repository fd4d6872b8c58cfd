#include "hopfcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hopfcorr/errors.hpp"

namespace hopfcorr {

// ---------------------------------------------------------------- Vec

Scalar Vec::get(uint32_t i) const {
    auto it = e_.find(i);
    return it == e_.end() ? Scalar::zero(backend_) : it->second;
}

void Vec::set(uint32_t i, const Scalar& v) {
    if (i >= dim_) throw HopfError("vector index out of range");
    if (v.is_zero())
        e_.erase(i);
    else
        e_[i] = v;
}

Vec Vec::operator+(const Vec& o) const {
    Vec r = *this;
    r.add_scaled(o, Scalar::one(backend_));
    return r;
}

Vec Vec::operator-(const Vec& o) const {
    Vec r = *this;
    r.add_scaled(o, -Scalar::one(backend_));
    return r;
}

Vec Vec::scaled(const Scalar& c) const {
    Vec r(dim_, backend_);
    if (c.is_zero()) return r;
    for (const auto& [i, v] : e_) {
        Scalar w = v * c;
        if (!w.is_zero()) r.e_[i] = w;
    }
    return r;
}

Vec& Vec::add_scaled(const Vec& o, const Scalar& c) {
    if (o.dim_ != dim_) throw HopfError("vector dimension mismatch");
    if (c.is_zero()) return *this;
    for (const auto& [i, v] : o.e_) {
        Scalar w = get(i) + v * c;
        set(i, w);
    }
    return *this;
}

Vec Vec::conj() const {
    Vec r(dim_, backend_);
    for (const auto& [i, v] : e_) r.e_[i] = v.conj();
    return r;
}

Scalar Vec::dot(const Vec& o) const {
    if (o.dim_ != dim_) throw HopfError("vector dimension mismatch");
    Scalar acc = Scalar::zero(backend_);
    const Vec& small = nnz() <= o.nnz() ? *this : o;
    const Vec& big = nnz() <= o.nnz() ? o : *this;
    for (const auto& [i, v] : small.e_) {
        auto it = big.e_.find(i);
        if (it == big.e_.end()) continue;
        if (&small == this)
            acc += v.conj() * it->second;
        else
            acc += it->second.conj() * v;
    }
    return acc;
}

double Vec::max_abs() const {
    double m = 0;
    for (const auto& [i, v] : e_) m = std::max(m, v.abs_double());
    return m;
}

bool Vec::approx_zero() const {
    if (backend_ == Backend::Exact) return e_.empty();
    return max_abs() <= tolerance().eps_num;
}

double Vec::distance(const Vec& a, const Vec& b) {
    return (a - b).max_abs();
}

bool Vec::approx_equal(const Vec& a, const Vec& b) {
    return (a - b).approx_zero();
}

Vec Vec::unit(uint32_t dim, Backend b, uint32_t i) {
    Vec r(dim, b);
    r.set(i, Scalar::one(b));
    return r;
}

std::string Vec::str() const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [i, v] : e_) {
        if (!first) os << ", ";
        os << i << ":" << v.str();
        first = false;
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- Mat

Mat Mat::identity(uint32_t n, Backend b) {
    Mat m(n, n, b);
    for (uint32_t i = 0; i < n; ++i) m.col_[i][i] = Scalar::one(b);
    return m;
}

Mat Mat::from_dense(Backend b, const std::vector<std::vector<Scalar>>& rows) {
    uint32_t r = rows.size();
    uint32_t c = r ? rows[0].size() : 0;
    Mat m(r, c, b);
    for (uint32_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw HopfError("ragged dense matrix");
        for (uint32_t j = 0; j < c; ++j)
            if (!rows[i][j].is_zero()) m.col_[j][i] = rows[i][j];
    }
    return m;
}

std::size_t Mat::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
}

Scalar Mat::get(uint32_t i, uint32_t j) const {
    auto it = col_[j].find(i);
    return it == col_[j].end() ? Scalar::zero(backend_) : it->second;
}

void Mat::set(uint32_t i, uint32_t j, const Scalar& v) {
    if (i >= rows_ || j >= cols_) throw HopfError("matrix index out of range");
    if (v.is_zero())
        col_[j].erase(i);
    else
        col_[j][i] = v;
}

void Mat::set_column(uint32_t j, const Vec& v) {
    if (v.dim() != rows_) throw HopfError("column dimension mismatch");
    col_[j].clear();
    for (const auto& [i, s] : v.entries()) col_[j][i] = s;
}

Vec Mat::column_vec(uint32_t j) const {
    Vec v(rows_, backend_);
    for (const auto& [i, s] : col_[j]) v.set(i, s);
    return v;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw HopfError("matrix shape mismatch");
    Mat r = *this;
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : o.col_[j]) r.set(i, j, r.get(i, j) + v);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    return *this + o.scaled(-Scalar::one(backend_));
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw HopfError("matrix shape mismatch in product");
    Mat r(rows_, o.cols_, backend_);
    for (uint32_t j = 0; j < o.cols_; ++j) {
        Vec acc(rows_, backend_);
        for (const auto& [k, v] : o.col_[j]) {
            for (const auto& [i, w] : col_[k]) acc.set(i, acc.get(i) + w * v);
        }
        r.set_column(j, acc);
    }
    return r;
}

Vec Mat::operator*(const Vec& v) const {
    if (cols_ != v.dim()) throw HopfError("matrix/vector shape mismatch");
    Vec acc(rows_, backend_);
    for (const auto& [k, x] : v.entries())
        for (const auto& [i, w] : col_[k]) acc.set(i, acc.get(i) + w * x);
    return acc;
}

Mat Mat::scaled(const Scalar& c) const {
    Mat r(rows_, cols_, backend_);
    if (c.is_zero()) return r;
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) {
            Scalar w = v * c;
            if (!w.is_zero()) r.col_[j][i] = w;
        }
    return r;
}

Mat Mat::adjoint() const {
    Mat r(cols_, rows_, backend_);
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) r.col_[i][j] = v.conj();
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_, backend_);
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) r.col_[i][j] = v;
    return r;
}

Mat Mat::conj() const {
    Mat r(rows_, cols_, backend_);
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) r.col_[j][i] = v.conj();
    return r;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    return approx_equal(identity(rows_, backend_));
}

bool Mat::approx_equal(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (uint32_t j = 0; j < cols_; ++j) {
        for (const auto& [i, v] : col_[j])
            if (!Scalar::approx_equal(v, o.get(i, j))) return false;
        for (const auto& [i, v] : o.col_[j])
            if (!Scalar::approx_equal(v, get(i, j))) return false;
    }
    return true;
}

double Mat::distance(const Mat& a, const Mat& b) {
    return (a - b).max_abs();
}

double Mat::max_abs() const {
    double m = 0;
    for (uint32_t j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) m = std::max(m, v.abs_double());
    return m;
}

bool Mat::is_hermitian() const {
    if (rows_ != cols_) return false;
    return approx_equal(adjoint());
}

std::string Mat::str() const {
    std::ostringstream os;
    for (uint32_t i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (uint32_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << get(i, j).str();
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------- SpanBasis

std::pair<Vec, std::vector<Scalar>> SpanBasis::reduce(const Vec& v) const {
    Vec r = v;
    std::vector<Scalar> coeff(reduced_.size(), Scalar::zero(backend_));
    for (std::size_t k = 0; k < reduced_.size(); ++k) {
        Scalar c = r.get(pivot_[k]);
        if (c.is_zero()) continue;
        r.add_scaled(reduced_[k], -c);
        coeff[k] = c;
    }
    return {r, coeff};
}

std::optional<std::vector<Scalar>> SpanBasis::insert(const Vec& v) {
    auto [r, coeff] = reduce(v);
    bool zero = (backend_ == Backend::Exact) ? r.is_zero() : r.approx_zero();
    if (zero) {
        // coords over members: v = sum coeff_k * reduced_k, reduced_k = rep_k . members
        std::vector<Scalar> out(members_.size(), Scalar::zero(backend_));
        for (std::size_t k = 0; k < coeff.size(); ++k) {
            if (coeff[k].is_zero()) continue;
            for (std::size_t m = 0; m < members_.size(); ++m)
                out[m] += coeff[k] * rep_[k][m];
        }
        return out;
    }
    // pick pivot: largest magnitude entry (stability for the float backend)
    uint32_t piv = r.entries().begin()->first;
    double best = -1;
    for (const auto& [i, s] : r.entries()) {
        double a = s.abs_double();
        if (a > best) {
            best = a;
            piv = i;
        }
    }
    Scalar p = r.get(piv);
    Vec rnorm = r.scaled(p.inverse());
    std::vector<Scalar> rep(members_.size() + 1, Scalar::zero(backend_));
    // rnorm = (v - sum coeff_k reduced_k)/p
    rep[members_.size()] = p.inverse();
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (coeff[k].is_zero()) continue;
        Scalar f = coeff[k] / p;
        for (std::size_t m = 0; m < rep_[k].size(); ++m) rep[m] -= f * rep_[k][m];
    }
    for (auto& row : rep_) row.push_back(Scalar::zero(backend_));
    // keep earlier reduced vectors clean at the new pivot
    for (std::size_t k = 0; k < reduced_.size(); ++k) {
        Scalar c = reduced_[k].get(piv);
        if (c.is_zero()) continue;
        reduced_[k].add_scaled(rnorm, -c);
        for (std::size_t m = 0; m < rep.size(); ++m) rep_[k][m] -= c * rep[m];
    }
    members_.push_back(v);
    reduced_.push_back(std::move(rnorm));
    pivot_.push_back(piv);
    rep_.push_back(std::move(rep));
    return std::nullopt;
}

std::optional<std::vector<Scalar>> SpanBasis::coordinates(const Vec& v) const {
    auto [r, coeff] = reduce(v);
    bool zero = (backend_ == Backend::Exact) ? r.is_zero() : r.approx_zero();
    if (!zero) return std::nullopt;
    std::vector<Scalar> out(members_.size(), Scalar::zero(backend_));
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (coeff[k].is_zero()) continue;
        for (std::size_t m = 0; m < members_.size(); ++m) out[m] += coeff[k] * rep_[k][m];
    }
    return out;
}

// ---------------------------------------------------------------- ldlt

LdltResult ldlt_psd(const Mat& G) {
    if (G.rows() != G.cols()) throw HopfError("ldlt_psd needs a square matrix");
    const uint32_t n = G.rows();
    const Backend b = G.backend();
    const bool exact = (b == Backend::Exact);
    const double slack = tolerance().eps_psd;

    std::vector<Scalar> a(std::size_t(n) * n, Scalar::zero(b));
    for (uint32_t j = 0; j < n; ++j)
        for (const auto& [i, v] : G.column(j)) a[std::size_t(i) * n + j] = v;

    std::vector<bool> active(n, true);
    LdltResult res;
    res.min_diag = 0.0;

    auto diag_val = [&](uint32_t i) { return a[std::size_t(i) * n + i]; };

    for (;;) {
        // best remaining diagonal pivot
        int best = -1;
        double best_abs = 0;
        for (uint32_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            Scalar d = diag_val(i);
            if (!d.is_real()) {
                res.psd = false;
                res.witness = "non-real diagonal at " + std::to_string(i);
                return res;
            }
            double dv = d.to_complex().real();
            res.min_diag = std::min(res.min_diag, dv);
            if (exact ? d.is_positive_real() : dv > slack) {
                if (std::abs(dv) > best_abs) {
                    best_abs = std::abs(dv);
                    best = int(i);
                }
            } else if (exact ? (dv < 0 && !d.is_zero()) : dv < -slack) {
                res.psd = false;
                res.witness = "negative diagonal pivot at " + std::to_string(i);
                return res;
            }
        }
        if (best < 0) {
            // all remaining diagonals are (effectively) zero: PSD iff the
            // remaining block vanishes (Hermitian: zero diagonal + nonzero
            // off-diagonal is indefinite)
            for (uint32_t i = 0; i < n; ++i) {
                if (!active[i]) continue;
                for (uint32_t j = 0; j < n; ++j) {
                    if (!active[j] || i == j) continue;
                    const Scalar& v = a[std::size_t(i) * n + j];
                    double va = v.abs_double();
                    if (exact ? !v.is_zero() : va > slack) {
                        res.psd = false;
                        res.witness = "zero diagonal with nonzero entry (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")";
                        return res;
                    }
                }
            }
            res.psd = true;
            res.rank = res.pivots.size();
            return res;
        }
        const uint32_t p = uint32_t(best);
        res.pivots.push_back(p);
        active[p] = false;
        Scalar d = diag_val(p);
        Scalar dinv = d.inverse();
        for (uint32_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            Scalar gip = a[std::size_t(i) * n + p];
            if (gip.is_zero()) continue;
            Scalar f = gip * dinv;
            for (uint32_t j = 0; j < n; ++j) {
                if (!active[j]) continue;
                Scalar gpj = a[std::size_t(p) * n + j];
                if (gpj.is_zero()) continue;
                a[std::size_t(i) * n + j] -= f * gpj;
            }
        }
    }
}

// ---------------------------------------------------------------- kernel

namespace {

struct EchelonRow {
    std::map<uint32_t, Scalar> e; // over column indices
    uint32_t pivot = 0;
};

bool effectively_zero(const Scalar& s, Backend b) {
    if (b == Backend::Exact) return s.is_zero();
    return s.abs_double() <= tolerance().eps_num;
}

} // namespace

std::vector<Vec> kernel(const Mat& A) {
    const Backend b = A.backend();
    const uint32_t n = A.cols();
    std::vector<EchelonRow> rref;

    // row-sparse copy
    std::vector<std::map<uint32_t, Scalar>> rows(A.rows());
    for (uint32_t j = 0; j < n; ++j)
        for (const auto& [i, v] : A.column(j)) rows[i][j] = v;

    for (auto& row : rows) {
        std::map<uint32_t, Scalar> r = std::move(row);
        // eliminate known pivots
        for (const auto& er : rref) {
            auto it = r.find(er.pivot);
            if (it == r.end()) continue;
            Scalar c = it->second;
            r.erase(it);
            for (const auto& [j, v] : er.e) {
                if (j == er.pivot) continue;
                Scalar w = (r.count(j) ? r[j] : Scalar::zero(b)) - c * v;
                if (w.is_zero())
                    r.erase(j);
                else
                    r[j] = w;
            }
        }
        // pick pivot: largest magnitude
        uint32_t piv = 0;
        double best = -1;
        for (const auto& [j, v] : r) {
            if (effectively_zero(v, b)) continue;
            double a = v.abs_double();
            if (a > best) {
                best = a;
                piv = j;
            }
        }
        if (best < 0) continue; // dependent row
        Scalar pinv = r[piv].inverse();
        EchelonRow er;
        er.pivot = piv;
        for (const auto& [j, v] : r) {
            Scalar w = v * pinv;
            if (!w.is_zero()) er.e[j] = w;
        }
        // back-substitute into existing rows
        for (auto& old : rref) {
            auto it = old.e.find(piv);
            if (it == old.e.end()) continue;
            Scalar c = it->second;
            old.e.erase(it);
            for (const auto& [j, v] : er.e) {
                if (j == piv) continue;
                Scalar w = (old.e.count(j) ? old.e[j] : Scalar::zero(b)) - c * v;
                if (w.is_zero())
                    old.e.erase(j);
                else
                    old.e[j] = w;
            }
        }
        rref.push_back(std::move(er));
    }

    std::vector<bool> is_pivot(n, false);
    for (const auto& er : rref) is_pivot[er.pivot] = true;
    std::vector<Vec> basis;
    for (uint32_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec x(n, b);
        x.set(j, Scalar::one(b));
        for (const auto& er : rref) {
            auto it = er.e.find(j);
            if (it != er.e.end()) x.set(er.pivot, -it->second);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<Vec> intersect_kernels(const std::vector<Mat>& mats, Backend b) {
    if (mats.empty()) return {};
    const uint32_t n = mats[0].cols();
    // K spans the current candidate subspace (columns)
    std::vector<Vec> K;
    for (uint32_t i = 0; i < n; ++i) K.push_back(Vec::unit(n, b, i));
    for (const auto& A : mats) {
        if (K.empty()) break;
        // restrict A to span(K): columns A*K
        Mat AK(A.rows(), uint32_t(K.size()), b);
        for (uint32_t j = 0; j < K.size(); ++j) AK.set_column(j, A * K[j]);
        std::vector<Vec> small = kernel(AK);
        std::vector<Vec> next;
        for (const auto& s : small) {
            Vec v(n, b);
            for (const auto& [k, c] : s.entries()) v.add_scaled(K[k], c);
            if (!v.is_zero()) next.push_back(std::move(v));
        }
        K = std::move(next);
    }
    return K;
}

// ---------------------------------------------------------------- eigenvalues

std::vector<double> hermitian_eigenvalues(const Mat& H) {
    if (H.rows() != H.cols()) throw HopfError("eigenvalues need a square matrix");
    const uint32_t n = H.rows();
    if (n == 0) return {};
    // real symmetric embedding [[Re, -Im], [Im, Re]]
    const uint32_t m = 2 * n;
    std::vector<double> a(std::size_t(m) * m, 0.0);
    for (uint32_t j = 0; j < n; ++j)
        for (const auto& [i, v] : H.column(j)) {
            std::complex<double> z = v.to_complex();
            a[std::size_t(i) * m + j] = z.real();
            a[std::size_t(i + n) * m + j + n] = z.real();
            a[std::size_t(i) * m + j + n] = -z.imag();
            a[std::size_t(i + n) * m + j] = z.imag();
        }
    auto at = [&](uint32_t i, uint32_t j) -> double& { return a[std::size_t(i) * m + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t j = i + 1; j < m; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-26) break;
        for (uint32_t p = 0; p < m; ++p)
            for (uint32_t q = p + 1; q < m; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (uint32_t k = 0; k < m; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (uint32_t k = 0; k < m; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev;
    for (uint32_t i = 0; i < m; ++i) ev.push_back(at(i, i));
    std::sort(ev.begin(), ev.end());
    // eigenvalues of the embedding come in duplicate pairs
    std::vector<double> out;
    for (uint32_t i = 0; i < n; ++i) out.push_back(ev[2 * i]);
    return out;
}

// ---------------------------------------------------------------- solve

Vec solve_square(const Mat& A, const Vec& rhs) {
    if (A.rows() != A.cols()) throw HopfError("solve_square needs a square matrix");
    const uint32_t n = A.rows();
    const Backend b = A.backend();
    std::vector<Scalar> a(std::size_t(n) * (n + 1), Scalar::zero(b));
    for (uint32_t j = 0; j < n; ++j)
        for (const auto& [i, v] : A.column(j)) a[std::size_t(i) * (n + 1) + j] = v;
    for (const auto& [i, v] : rhs.entries()) a[std::size_t(i) * (n + 1) + n] = v;

    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t best = col;
        double best_abs = -1;
        for (uint32_t r = col; r < n; ++r) {
            double v = a[std::size_t(perm[r]) * (n + 1) + col].abs_double();
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        std::swap(perm[col], perm[best]);
        Scalar piv = a[std::size_t(perm[col]) * (n + 1) + col];
        if (piv.is_zero()) throw HopfError("singular matrix in solve_square");
        Scalar pinv = piv.inverse();
        for (uint32_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Scalar f = a[std::size_t(perm[r]) * (n + 1) + col] * pinv;
            if (f.is_zero()) continue;
            for (uint32_t j = col; j <= n; ++j)
                a[std::size_t(perm[r]) * (n + 1) + j] -=
                    f * a[std::size_t(perm[col]) * (n + 1) + j];
        }
    }
    Vec x(n, b);
    for (uint32_t col = 0; col < n; ++col) {
        Scalar piv = a[std::size_t(perm[col]) * (n + 1) + col];
        x.set(col, a[std::size_t(perm[col]) * (n + 1) + n] / piv);
    }
    return x;
}

Mat projector_onto(const std::vector<Vec>& basis, const Mat& metric) {
    const uint32_t n = metric.rows();
    const Backend b = metric.backend();
    const uint32_t k = uint32_t(basis.size());
    if (k == 0) return Mat(n, n, b);
    Mat B(n, k, b);
    for (uint32_t j = 0; j < k; ++j) B.set_column(j, basis[j]);
    Mat BM = B.adjoint() * metric; // k x n
    Mat gram = BM * B;             // k x k, Hermitian PD on the span
    Mat P(n, n, b);
    for (uint32_t j = 0; j < n; ++j) {
        Vec w = BM.column_vec(j);
        Vec x = solve_square(gram, w);
        P.set_column(j, B * x);
    }
    return P;
}

} // namespace hopfcorr
