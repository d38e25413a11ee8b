// Small dense exact linear algebra over a scalar field: row reduction,
// rank, linear solve, kernel basis. Used for the h-solves on graded pieces,
// the rank checks of the acyclicity verifier and the brute-force oracles.
#pragma once

#include <cassert>
#include <optional>
#include <vector>

namespace weilforge {

template <class K>
struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<K> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, K::zero()) {}
    K& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const K& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Reduced row echelon form in place; returns pivot columns.
template <class K>
std::vector<int> rref(DenseMatrix<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        K inv = K::one() / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(DenseMatrix<K> m) {
    return static_cast<int>(rref(m).size());
}

// Solve A x = b; nullopt if inconsistent. If the system is underdetermined
// the free variables are set to zero.
template <class K>
std::optional<std::vector<K>> solve(const DenseMatrix<K>& A, const std::vector<K>& b,
                                    int* nullity = nullptr) {
    assert(static_cast<int>(b.size()) == A.rows);
    DenseMatrix<K> m(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        m.at(i, A.cols) = b[i];
    }
    auto pivots = rref(m);
    for (int c : pivots)
        if (c == A.cols) return std::nullopt;  // pivot in the rhs column
    if (nullity) *nullity = A.cols - static_cast<int>(pivots.size());
    std::vector<K> x(A.cols, K::zero());
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m.at(static_cast<int>(r), A.cols);
    return x;
}

// Basis of the kernel of A.
template <class K>
std::vector<std::vector<K>> kernel_basis(DenseMatrix<K> m) {
    int cols = m.cols;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<K> v(cols, K::zero());
        v[c] = K::one();
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace weilforge
