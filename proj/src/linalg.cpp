#include "tw/linalg.hpp"

namespace tw {

bool Matrix::is_zero() const {
    for (const auto& q : a_)
        if (q != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols() != y.rows()) throw Error("matrix product: shape mismatch");
    Matrix z(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0) continue;
            for (int j = 0; j < y.cols(); ++j)
                if (y(k, j) != 0) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

std::vector<Q> operator*(const Matrix& x, const std::vector<Q>& v) {
    if (x.cols() != static_cast<int>(v.size())) throw Error("matrix-vector product: shape mismatch");
    std::vector<Q> out(x.rows());
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k)
            if (x(i, k) != 0 && v[k] != 0) out[i] += x(i, k) * v[k];
    return out;
}

RowEchelon rref(Matrix m) {
    RowEchelon out;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        const Q inv = 1 / m(row, col);
        for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            const Q f = m(r, col);
            for (int c = col; c < m.cols(); ++c)
                if (m(row, c) != 0) m(r, c) -= f * m(row, c);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

std::vector<std::vector<Q>> kernel(const Matrix& m) {
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : e.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Q>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Q> v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.reduced(static_cast<int>(i), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Q>> solve(const Matrix& m, const std::vector<Q>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw Error("solve: right-hand side has the wrong length");
    Matrix aug(m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    RowEchelon e = rref(std::move(aug));
    std::vector<Q> x(m.cols());
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        if (e.pivot_cols[i] == m.cols()) return std::nullopt;
        x[e.pivot_cols[i]] = e.reduced(static_cast<int>(i), m.cols());
    }
    return x;
}

}  // namespace tw
