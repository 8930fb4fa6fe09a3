#include "densitymod/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace densitymod {

Matrix zeros(size_t rows, size_t cols) { return Matrix(rows, Vector(cols, GaussianRational(0))); }

std::vector<size_t> rref(Matrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        GaussianRational inv = GaussianRational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            GaussianRational f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(Matrix m) { return rref(m).size(); }

std::vector<Vector> nullspace(Matrix m, size_t cols) {
    for (auto& row : m)
        if (row.size() != cols) throw DimensionError("nullspace: ragged matrix");
    auto piv = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : piv) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols, GaussianRational(0));
        v[f] = 1;
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionError("solve: size mismatch");
    if (a.empty()) return Vector();
    size_t cols = a[0].size();
    Matrix aug = a;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return std::nullopt;
    Vector x(cols, GaussianRational(0));
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return x;
}

bool is_hermitian(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) return false;
        for (size_t j = 0; j <= i; ++j)
            if (m[i][j] != m[j][i].conj()) return false;
    }
    return true;
}

std::vector<GaussianRational> leading_principal_minors(const Matrix& m) {
    // Gaussian elimination without pivoting: the k-th minor is the product of
    // the first k pivots as long as no earlier pivot vanishes.
    Matrix a = m;
    size_t n = a.size();
    std::vector<GaussianRational> minors;
    GaussianRational det = 1;
    for (size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            // later minors need a full determinant; compute them directly
            for (size_t kk = k; kk < n; ++kk) {
                Matrix sub(kk + 1);
                for (size_t i = 0; i <= kk; ++i) sub[i] = Vector(m[i].begin(), m[i].begin() + kk + 1);
                GaussianRational d = 1;
                for (size_t c = 0; c <= kk; ++c) {
                    size_t p = c;
                    while (p <= kk && sub[p][c].is_zero()) ++p;
                    if (p > kk) {
                        d = 0;
                        break;
                    }
                    if (p != c) {
                        std::swap(sub[p], sub[c]);
                        d = -d;
                    }
                    d *= sub[c][c];
                    for (size_t i = c + 1; i <= kk; ++i) {
                        if (sub[i][c].is_zero()) continue;
                        GaussianRational f = sub[i][c] / sub[c][c];
                        for (size_t j = c; j <= kk; ++j) sub[i][j] -= f * sub[c][j];
                    }
                }
                minors.push_back(d);
            }
            return minors;
        }
        det *= a[k][k];
        minors.push_back(det);
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero()) continue;
            GaussianRational f = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return minors;
}

bool is_hermitian_positive_definite(const Matrix& m) {
    if (!is_hermitian(m)) return false;
    for (const auto& d : leading_principal_minors(m))
        if (!d.is_real() || sgn(d.re) <= 0) return false;
    return true;
}

void SparseMatrix::set_column(int j, std::vector<Entry> entries) {
    if (j < 0 || j >= cols_) throw std::out_of_range("column index");
    std::map<int, GaussianRational> acc;
    for (auto& [i, v] : entries) {
        if (i < 0 || i >= rows_) throw std::out_of_range("row index");
        acc[i] += v;
    }
    columns_[j].clear();
    for (auto& [i, v] : acc)
        if (!v.is_zero()) columns_[j].push_back({i, std::move(v)});
}

GaussianRational SparseMatrix::at(int i, int j) const {
    for (const auto& [r, v] : columns_.at(j))
        if (r == i) return v;
    return GaussianRational(0);
}

size_t SparseMatrix::nonzeros() const {
    size_t s = 0;
    for (const auto& c : columns_) s += c.size();
    return s;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("sparse product shape mismatch");
    SparseMatrix r(rows_, o.cols_);
    for (int j = 0; j < o.cols_; ++j) {
        std::map<int, GaussianRational> acc;
        for (const auto& [k, b] : o.columns_[j])
            for (const auto& [i, a] : columns_[k]) acc[i] += a * b;
        for (auto& [i, v] : acc)
            if (!v.is_zero()) r.columns_[j].push_back({i, std::move(v)});
    }
    return r;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("sparse shape mismatch");
    SparseMatrix r(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        std::vector<SparseMatrix::Entry> e = a.column(j);
        for (const auto& [i, v] : b.column(j)) e.push_back({i, subtract ? -v : v});
        r.set_column(j, std::move(e));
    }
    return r;
}

}  // namespace

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const { return combine(*this, o, false); }
SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return combine(*this, o, true); }

SparseMatrix SparseMatrix::operator*(const GaussianRational& c) const {
    SparseMatrix r(rows_, cols_);
    if (c.is_zero()) return r;
    for (int j = 0; j < cols_; ++j) {
        r.columns_[j] = columns_[j];
        for (auto& e : r.columns_[j]) e.second *= c;
    }
    return r;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int j = 0; j < cols_; ++j) {
        const auto& a = columns_[j];
        const auto& b = o.columns_[j];
        if (a.size() != b.size()) return false;
        for (size_t k = 0; k < a.size(); ++k)
            if (a[k].first != b[k].first || a[k].second != b[k].second) return false;
    }
    return true;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix r(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, v] : columns_[j]) r.columns_[i].push_back({j, v});
    return r;
}

SparseMatrix SparseMatrix::conj() const {
    SparseMatrix r = *this;
    for (auto& c : r.columns_)
        for (auto& e : c) e.second = e.second.conj();
    return r;
}

SparseMatrix SparseMatrix::masked_columns(const std::vector<bool>& keep) const {
    if (int(keep.size()) != cols_) throw DimensionError("mask size mismatch");
    SparseMatrix r(rows_, cols_);
    for (int j = 0; j < cols_; ++j)
        if (keep[j]) r.columns_[j] = columns_[j];
    return r;
}

Matrix SparseMatrix::dense() const {
    Matrix m = zeros(rows_, cols_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, v] : columns_[j]) m[i][j] = v;
    return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
    int rows = int(m.size()), cols = rows ? int(m[0].size()) : 0;
    SparseMatrix r(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            if (!m[i][j].is_zero()) r.columns_[j].push_back({i, m[i][j]});
    return r;
}

}  // namespace densitymod
