#pragma once

#include <optional>
#include <vector>

#include "tw/graded.hpp"

namespace tw {

/** Dense row-major matrix over Q. */
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Q& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Q& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    bool is_zero() const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Q> a_;
};

Matrix operator*(const Matrix& x, const Matrix& y);
std::vector<Q> operator*(const Matrix& x, const std::vector<Q>& v);

struct RowEchelon {
    Matrix reduced;
    std::vector<int> pivot_cols;
};

/** Reduced row echelon form; pivots are the first nonzero entry scanning columns left to right. */
RowEchelon rref(Matrix m);
int rank(const Matrix& m);
/** Basis of the null space, one vector per free column, with that free coordinate equal to 1. */
std::vector<std::vector<Q>> kernel(const Matrix& m);
/** A solution of m x = b with all free coordinates zero, or nothing when inconsistent. */
std::optional<std::vector<Q>> solve(const Matrix& m, const std::vector<Q>& b);

}  // namespace tw
