#pragma once

#include "cmzv/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace cmzv {

/// Dense matrix over an exact (or precision-tracked) field, row-major.
template <class S>
struct DenseMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<S> a;

    DenseMatrix() = default;
    DenseMatrix(size_t r, size_t c, const S& fill) : rows(r), cols(c), a(r * c, fill) {}

    S& at(size_t i, size_t j) { return a[i * cols + j]; }
    const S& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

/// Row echelon via Gaussian elimination; pivots prefer the smallest
/// scalar_pivot_rank (for p-adics: the largest norm). Returns pivot columns.
template <class S>
std::vector<size_t> row_echelon(DenseMatrix<S>& m)
{
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::optional<size_t> best;
        for (size_t i = row; i < m.rows; ++i) {
            if (scalar_is_zero(m.at(i, col)))
                continue;
            if (!best || scalar_pivot_rank(m.at(i, col)) < scalar_pivot_rank(m.at(*best, col)))
                best = i;
        }
        if (!best)
            continue;
        if (*best != row)
            for (size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(row, j), m.at(*best, j));
        S inv = scalar_inv(m.at(row, col));
        for (size_t j = col; j < m.cols; ++j)
            m.at(row, j) = m.at(row, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || scalar_is_zero(m.at(i, col)))
                continue;
            S factor = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class S>
size_t matrix_rank(DenseMatrix<S> m)
{
    return row_echelon(m).size();
}

/// Kernel basis of m (as column vectors).
template <class S>
std::vector<std::vector<S>> kernel_basis(DenseMatrix<S> m, const S& one, const S& zero)
{
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<S>> basis;
    for (size_t freec = 0; freec < m.cols; ++freec) {
        if (is_pivot[freec])
            continue;
        std::vector<S> v(m.cols, zero);
        v[freec] = one;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct SolveStatus {
    bool consistent = true;
    bool unique = true;
};

/// Solve A x = b; returns the particular solution with free variables zero.
template <class S>
std::optional<std::vector<S>> solve_linear(DenseMatrix<S> m, std::vector<S> b, const S& zero,
                                           SolveStatus* status = nullptr)
{
    if (b.size() != m.rows)
        throw std::invalid_argument("solve_linear: dimension mismatch");
    DenseMatrix<S> aug(m.rows, m.cols + 1, zero);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto pivots = row_echelon(aug);
    SolveStatus st;
    if (!pivots.empty() && pivots.back() == m.cols) {
        st.consistent = false;
        if (status)
            *status = st;
        return std::nullopt;
    }
    st.unique = pivots.size() == m.cols;
    std::vector<S> x(m.cols, zero);
    for (size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at(r, m.cols);
    if (status)
        *status = st;
    return x;
}

} // namespace cmzv
