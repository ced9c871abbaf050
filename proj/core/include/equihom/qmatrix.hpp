#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace equihom {

// All arithmetic in the project is exact rational arithmetic.
using Rat = mpq_class;
using QVec = std::vector<Rat>;
using SparseVec = std::map<int, Rat>;

QVec to_dense(const SparseVec& v, int dim);
SparseVec to_sparse(const QVec& v);

/// Sparse matrix over the rationals. Rows are kept as ordered column->value
/// maps with no explicit zeros stored.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols);

    static QMatrix identity(int n);
    static QMatrix from_rows(const std::vector<QVec>& rows);
    static QMatrix from_columns(const std::vector<QVec>& cols, int dim);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat at(int r, int c) const;
    void set(int r, int c, const Rat& v);
    void add_to(int r, int c, const Rat& v);
    const SparseVec& row(int r) const { return data_[r]; }

    long long nonzeros() const;
    bool is_zero() const;
    bool operator==(const QMatrix& other) const;
    bool operator!=(const QMatrix& other) const { return !(*this == other); }

    QMatrix operator+(const QMatrix& other) const;
    QMatrix operator-(const QMatrix& other) const;
    QMatrix operator*(const QMatrix& other) const;
    QMatrix scaled(const Rat& s) const;
    QMatrix transpose() const;

    QVec apply(const QVec& v) const;
    SparseVec apply(const SparseVec& v) const;
    QVec column(int c) const;
    std::vector<QVec> columns() const;

    /// Copies B into this matrix with its top-left corner at (r0, c0).
    void insert_block(int r0, int c0, const QMatrix& B);
    QMatrix submatrix(int r0, int rcount, int c0, int ccount) const;

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<SparseVec> data_;
};

/// Row space kept in reduced row echelon form. Insertions maintain full
/// mutual reduction, so pivot columns and residues are canonical.
class EchelonBasis {
public:
    explicit EchelonBasis(int dim) : dim_(dim) {}

    /// Returns true when v was independent of the current row space.
    bool insert(SparseVec v);
    bool insert(const QVec& v);

    /// Canonical representative of v modulo the row space (zero at pivots).
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    std::vector<int> pivot_columns() const;
    std::vector<int> free_columns() const;
    const std::map<int, SparseVec>& rows() const { return rows_; }

private:
    int dim_;
    std::map<int, SparseVec> rows_;  // pivot column -> normalized reduced row
};

int rank(const QMatrix& m);
std::vector<QVec> kernel_basis(const QMatrix& m);
/// Basis of the column space: the columns of m at its column rank profile.
std::vector<QVec> image_basis(const QMatrix& m);

/// Coefficients expressing y in the given (independent) spanning vectors,
/// or nullopt when y is outside their span.
std::optional<QVec> solve_in_span(const std::vector<QVec>& basis, const QVec& y);

/// Matrix of op restricted to the subspace spanned by basis, in that basis.
/// Requires op to preserve the subspace; throws verification_error otherwise.
QMatrix restrict_operator(const QMatrix& op, const std::vector<QVec>& basis);

}  // namespace equihom
