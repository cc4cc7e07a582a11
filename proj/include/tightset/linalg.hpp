#pragma once

#include <vector>

#include "tightset/common.hpp"
#include "tightset/galois.hpp"

// Dense linear algebra over F_q: plain deterministic Gaussian elimination.
// Pivots are chosen leftmost-column-first, then topmost-row-first, so every
// routine is order-deterministic, and subspaces are kept in reduced row
// echelon form, giving each subspace exactly one representation. That
// canonical form is what makes annihilator computations reproducible and
// comparable across runs.

namespace tightset {

struct MatrixFq {
    const Field* field = nullptr;
    int rows = 0, cols = 0;
    std::vector<Fq> a;

    MatrixFq() = default;
    MatrixFq(const Field& F, int r, int c)
        : field(&F), rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    Fq& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    Fq at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// In-place reduced row echelon form; returns the rank.
inline int row_reduce(MatrixFq& m) {
    const Field& F = *m.field;
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows; ++r)
            if (m.at(r, col).v != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != pivot_row)
            for (int c = 0; c < m.cols; ++c)
                std::swap(m.at(sel, c), m.at(pivot_row, c));
        const Fq scale = F.inv(m.at(pivot_row, col));
        for (int c = col; c < m.cols; ++c)
            m.at(pivot_row, c) = F.mul(scale, m.at(pivot_row, c));
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row) continue;
            const Fq factor = m.at(r, col);
            if (factor.v == 0) continue;
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = F.sub(m.at(r, c), F.mul(factor, m.at(pivot_row, c)));
        }
        ++pivot_row;
    }
    return pivot_row;
}

// A subspace of F_q^ambient in canonical form: RREF rows, pivots strictly
// increasing, no zero rows. Two equal subspaces compare equal memberwise.
struct SubspaceBasis {
    const Field* field = nullptr;
    int ambient = 0;
    std::vector<std::vector<Fq>> rows;

    int dim() const { return static_cast<int>(rows.size()); }

    friend bool operator==(const SubspaceBasis& x, const SubspaceBasis& y) {
        return x.ambient == y.ambient && x.rows == y.rows;
    }
};

inline SubspaceBasis make_subspace(const Field& F, int ambient,
                                   const std::vector<std::vector<Fq>>& generators) {
    for (const auto& g : generators)
        check_config(static_cast<int>(g.size()) == ambient,
                     "generator length does not match ambient dimension");
    MatrixFq m(F, static_cast<int>(generators.size()), ambient);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < ambient; ++c) m.at(r, c) = generators[r][c];
    const int rank = row_reduce(m);
    SubspaceBasis s;
    s.field = &F;
    s.ambient = ambient;
    s.rows.reserve(rank);
    for (int r = 0; r < rank; ++r) {
        std::vector<Fq> row(ambient);
        for (int c = 0; c < ambient; ++c) row[c] = m.at(r, c);
        s.rows.push_back(std::move(row));
    }
    return s;
}

// Solution space of M x = 0 (x a column vector), canonical.
inline SubspaceBasis kernel_basis(MatrixFq m) {
    const Field& F = *m.field;
    const int rank = row_reduce(m);
    std::vector<int> pivot_col;
    pivot_col.reserve(rank);
    {
        int col = 0;
        for (int r = 0; r < rank; ++r) {
            while (m.at(r, col).v == 0) ++col;
            pivot_col.push_back(col);
        }
    }
    std::vector<std::vector<Fq>> gens;
    int next_pivot = 0;
    for (int col = 0; col < m.cols; ++col) {
        if (next_pivot < rank && pivot_col[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        std::vector<Fq> v(m.cols, F.zero());
        v[col] = F.one();
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(m.at(r, col));
        gens.push_back(std::move(v));
    }
    return make_subspace(F, m.cols, gens);
}

inline bool subspace_contains(const SubspaceBasis& s, std::vector<Fq> v) {
    const Field& F = *s.field;
    check_config(static_cast<int>(v.size()) == s.ambient,
                 "vector length does not match ambient dimension");
    for (const auto& row : s.rows) {
        int pc = 0;
        while (row[pc].v == 0) ++pc;
        const Fq factor = v[pc];
        if (factor.v == 0) continue;
        for (int c = pc; c < s.ambient; ++c)
            v[c] = F.sub(v[c], F.mul(factor, row[c]));
    }
    for (const Fq& x : v)
        if (x.v != 0) return false;
    return true;
}

inline SubspaceBasis subspace_sum(const SubspaceBasis& x, const SubspaceBasis& y) {
    check_config(x.field == y.field && x.ambient == y.ambient,
                 "subspace sum requires a common ambient space");
    std::vector<std::vector<Fq>> gens = x.rows;
    gens.insert(gens.end(), y.rows.begin(), y.rows.end());
    return make_subspace(*x.field, x.ambient, gens);
}

// Row space as a matrix, for feeding a basis back into kernel computations.
inline MatrixFq as_matrix(const SubspaceBasis& s) {
    MatrixFq m(*s.field, s.dim(), s.ambient);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = s.rows[r][c];
    return m;
}

// Intersection via annihilators: row(A) = {x : x . k = 0 for k in ker A},
// so row(A) meet row(B) is the kernel of the stacked annihilator bases.
inline SubspaceBasis subspace_intersect(const SubspaceBasis& x, const SubspaceBasis& y) {
    check_config(x.field == y.field && x.ambient == y.ambient,
                 "subspace intersection requires a common ambient space");
    const Field& F = *x.field;
    const SubspaceBasis kx = kernel_basis(as_matrix(x));
    const SubspaceBasis ky = kernel_basis(as_matrix(y));
    MatrixFq stacked(F, kx.dim() + ky.dim(), x.ambient);
    for (int r = 0; r < kx.dim(); ++r)
        for (int c = 0; c < x.ambient; ++c) stacked.at(r, c) = kx.rows[r][c];
    for (int r = 0; r < ky.dim(); ++r)
        for (int c = 0; c < x.ambient; ++c) stacked.at(kx.dim() + r, c) = ky.rows[r][c];
    return kernel_basis(stacked);
}

inline int matrix_rank(MatrixFq m) { return row_reduce(m); }

}  // namespace tightset
