#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "densitymod/scalar.hpp"

namespace densitymod {

// Dense exact matrices, row-major.
using Matrix = std::vector<std::vector<GaussianRational>>;
using Vector = std::vector<GaussianRational>;

Matrix zeros(size_t rows, size_t cols);
// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(Matrix& m);
size_t rank(Matrix m);
// Basis of {x : m x = 0}.
std::vector<Vector> nullspace(Matrix m, size_t cols);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
bool is_hermitian(const Matrix& m);
// Determinants of the leading k x k blocks, k = 1..n.
std::vector<GaussianRational> leading_principal_minors(const Matrix& m);
// All leading minors real and strictly positive (Sylvester).
bool is_hermitian_positive_definite(const Matrix& m);

// Column-compressed sparse matrix with sorted row indices.
class SparseMatrix {
public:
    using Entry = std::pair<int, GaussianRational>;

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), columns_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Entry>& column(int j) const { return columns_[j]; }
    // replaces column j; entries need not be sorted, zeros are dropped
    void set_column(int j, std::vector<Entry> entries);
    GaussianRational at(int i, int j) const;
    size_t nonzeros() const;
    bool is_zero() const { return nonzeros() == 0; }

    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix operator*(const GaussianRational& c) const;
    bool operator==(const SparseMatrix& o) const;
    bool operator!=(const SparseMatrix& o) const { return !(*this == o); }

    SparseMatrix transpose() const;
    SparseMatrix conj() const;
    // keeps only the columns with keep[j] true
    SparseMatrix masked_columns(const std::vector<bool>& keep) const;

    Matrix dense() const;
    static SparseMatrix from_dense(const Matrix& m);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<Entry>> columns_;
};

}  // namespace densitymod
