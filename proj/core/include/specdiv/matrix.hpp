#pragma once

#include "specdiv/numeric.hpp"

#include <initializer_list>
#include <vector>

namespace specdiv {

/// Dense row-major matrix over an exact scalar type (Int or Rat).
template <class T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols) {}
    Mat(int rows, int cols, std::initializer_list<T> vals) : Mat(rows, cols) {
        size_t k = 0;
        for (const T& v : vals) d_[k++] = v;
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& at(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
    const T& at(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

    Mat transposed() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    std::vector<T> column(int j) const {
        std::vector<T> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

private:
    int rows_, cols_;
    std::vector<T> d_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

IMat mul(const IMat& a, const IMat& b);
QMat mul(const QMat& a, const QMat& b);
std::vector<Int> mul(const IMat& a, const std::vector<Int>& x);
std::vector<Rat> mul_q(const QMat& a, const std::vector<Rat>& x);

QMat to_rational(const IMat& a);

/// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IMat& a);

/// Row Hermite normal form: H = U*A with U unimodular; pivots positive,
/// entries above each pivot reduced into [0, pivot).
struct HnfResult {
    IMat h;
    IMat u;
    int rank = 0;
};
HnfResult row_hnf(const IMat& a);

/// Canonical basis (columns) of the column span: transpose of the row HNF
/// of A^T with zero columns dropped.
IMat hnf_column_basis(const IMat& a);

/// Smith normal form U*A*V = D with D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithResult {
    IMat d;
    IMat u;
    IMat v;
    int rank = 0;
};
SmithResult smith_normal_form(const IMat& a);

/// Saturated integer kernel {x : A x = 0}, columns in canonical HNF form.
IMat kernel_basis(const IMat& a);

/// One integral solution of A x = b, if any.
bool solve_integer(const IMat& a, const std::vector<Int>& b, std::vector<Int>& x);

/// Unimodular W whose first k columns span the same sublattice as the given
/// primitive r x k matrix (k = 1 or 2 in practice). Throws if not primitive.
IMat unimodular_completion(const IMat& cols);

/// Exact inverse of a nonsingular rational matrix.
QMat inverse(const QMat& a);

/// Solve A x = b over the rationals (A square nonsingular).
std::vector<Rat> solve_rational(const QMat& a, const std::vector<Rat>& b);

}  // namespace specdiv
