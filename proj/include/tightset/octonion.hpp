#pragma once

#include <array>
#include <cstdint>

#include "tightset/common.hpp"
#include "tightset/galois.hpp"
#include "tightset/linalg.hpp"

// Split octonion algebra over F_q in the fixed basis x1..x8.
//
// The product is table-driven: 32 nonzero structure cells, four per row,
// with signs folded in. The identity element is x4 + x5. Conjugation swaps
// the two diagonal idempotent coordinates and negates the rest; trace and
// norm read off the coordinates directly:
//   Tr(x) = l4 + l5,   N(x) = l1*l8 + l2*l7 + l3*l6 + l4*l5,
//   B(x, y) = N(x+y) - N(x) - N(y) = Tr(x * conj(y)).
// oct_self_check() re-derives the identity property and the two bilinear
// form routes on all 64 basis pairs before heavy runs.
//
// The cell signs are exactly those of the Zorn vector-matrix model
// (x4, x5 the diagonal idempotents; x1, x6, x7 the top-right vector units;
// x8, x3, x2 the bottom-left ones): every cross-product cell pair is
// antisymmetric. Any deviation breaks x^2 - Tr(x) x + N(x) 1 = 0 in odd
// characteristic, which the test suite checks on random elements.

namespace tightset {

struct Octonion {
    const Field* field = nullptr;
    std::array<Fq, 8> c{};
};

namespace detail {
// x_i * x_j = (+/-) x_k, zero-based indices.
struct OctCell {
    std::uint8_t i, j, k;
    bool neg;
};

inline constexpr OctCell kOctCells[32] = {
    {0, 4, 0, false}, {0, 5, 1, false}, {0, 6, 2, true},  {0, 7, 3, true},
    {1, 2, 0, true},  {1, 3, 1, false}, {1, 6, 4, true},  {1, 7, 5, false},
    {2, 1, 0, false}, {2, 3, 2, false}, {2, 5, 4, true},  {2, 7, 6, true},
    {3, 0, 0, false}, {3, 3, 3, false}, {3, 5, 5, false}, {3, 6, 6, false},
    {4, 1, 1, false}, {4, 2, 2, false}, {4, 4, 4, false}, {4, 7, 7, false},
    {5, 0, 1, true},  {5, 2, 3, true},  {5, 4, 5, false}, {5, 6, 7, false},
    {6, 0, 2, false}, {6, 1, 3, true},  {6, 4, 6, false}, {6, 5, 7, true},
    {7, 0, 4, true},  {7, 1, 5, true},  {7, 2, 6, false}, {7, 3, 7, false},
};
}  // namespace detail

inline Octonion oct_zero(const Field& F) { return Octonion{&F, {}}; }

inline Octonion oct_basis(const Field& F, int i) {
    check_config(i >= 0 && i < 8, "basis index out of range");
    Octonion r = oct_zero(F);
    r.c[i] = F.one();
    return r;
}

inline Octonion oct_identity(const Field& F) {
    Octonion r = oct_zero(F);
    r.c[3] = F.one();
    r.c[4] = F.one();
    return r;
}

inline bool oct_is_zero(const Octonion& a) {
    for (const Fq& x : a.c)
        if (x.v != 0) return false;
    return true;
}

inline Octonion oct_add(const Octonion& a, const Octonion& b) {
    check_config(a.field == b.field, "mixed-field octonion operands");
    Octonion r{a.field, {}};
    for (int i = 0; i < 8; ++i) r.c[i] = a.field->add(a.c[i], b.c[i]);
    return r;
}

inline Octonion oct_neg(const Octonion& a) {
    Octonion r{a.field, {}};
    for (int i = 0; i < 8; ++i) r.c[i] = a.field->neg(a.c[i]);
    return r;
}

inline Octonion oct_sub(const Octonion& a, const Octonion& b) {
    return oct_add(a, oct_neg(b));
}

inline Octonion oct_scale(Fq s, const Octonion& a) {
    Octonion r{a.field, {}};
    for (int i = 0; i < 8; ++i) r.c[i] = a.field->mul(s, a.c[i]);
    return r;
}

inline Octonion oct_mul(const Octonion& a, const Octonion& b) {
    check_config(a.field == b.field, "mixed-field octonion operands");
    const Field& F = *a.field;
    Octonion r{a.field, {}};
    for (const auto& cell : detail::kOctCells) {
        Fq prod = F.mul(a.c[cell.i], b.c[cell.j]);
        if (prod.v == 0) continue;
        if (cell.neg) prod = F.neg(prod);
        r.c[cell.k] = F.add(r.c[cell.k], prod);
    }
    return r;
}

inline Octonion oct_conj(const Octonion& a) {
    const Field& F = *a.field;
    Octonion r{a.field, {}};
    r.c[0] = F.neg(a.c[0]);
    r.c[1] = F.neg(a.c[1]);
    r.c[2] = F.neg(a.c[2]);
    r.c[3] = a.c[4];
    r.c[4] = a.c[3];
    r.c[5] = F.neg(a.c[5]);
    r.c[6] = F.neg(a.c[6]);
    r.c[7] = F.neg(a.c[7]);
    return r;
}

inline Fq oct_trace(const Octonion& a) { return a.field->add(a.c[3], a.c[4]); }

inline Fq oct_norm(const Octonion& a) {
    const Field& F = *a.field;
    Fq n = F.mul(a.c[0], a.c[7]);
    n = F.add(n, F.mul(a.c[1], a.c[6]));
    n = F.add(n, F.mul(a.c[2], a.c[5]));
    n = F.add(n, F.mul(a.c[3], a.c[4]));
    return n;
}

// B(x, y) = N(x+y) - N(x) - N(y), evaluated via the trace route which costs
// no additions of full octonions: B(x, y) = Tr(x * conj(y)).
inline Fq oct_bilinear(const Octonion& a, const Octonion& b) {
    return oct_trace(oct_mul(a, oct_conj(b)));
}

// Matrix of v -> a * v in the x-basis (column j holds a * x_j).
inline MatrixFq left_mul_matrix(const Octonion& a) {
    const Field& F = *a.field;
    MatrixFq m(F, 8, 8);
    for (const auto& cell : detail::kOctCells) {
        Fq v = a.c[cell.i];
        if (cell.neg) v = F.neg(v);
        m.at(cell.k, cell.j) = F.add(m.at(cell.k, cell.j), v);
    }
    return m;
}

// Matrix of v -> v * a in the x-basis (column j holds x_j * a).
inline MatrixFq right_mul_matrix(const Octonion& a) {
    const Field& F = *a.field;
    MatrixFq m(F, 8, 8);
    for (const auto& cell : detail::kOctCells) {
        Fq v = a.c[cell.j];
        if (cell.neg) v = F.neg(v);
        m.at(cell.k, cell.i) = F.add(m.at(cell.k, cell.i), v);
    }
    return m;
}

// ann_left(a) = { v : v * a = 0 },  ann_right(a) = { v : a * v = 0 }.
inline SubspaceBasis ann_left(const Octonion& a) {
    return kernel_basis(right_mul_matrix(a));
}

inline SubspaceBasis ann_right(const Octonion& a) {
    return kernel_basis(left_mul_matrix(a));
}

// Octonions <-> base-q integer codes (coordinate 0 = least significant digit).
inline Octonion oct_from_code(const Field& F, std::uint32_t code) {
    Octonion r = oct_zero(F);
    const std::uint32_t q = static_cast<std::uint32_t>(F.q());
    for (int i = 0; i < 8; ++i) {
        r.c[i] = Fq{static_cast<std::uint16_t>(code % q)};
        code /= q;
    }
    return r;
}

inline std::uint32_t oct_code(const Octonion& a) {
    const std::uint32_t q = static_cast<std::uint32_t>(a.field->q());
    std::uint32_t code = 0;
    for (int i = 7; i >= 0; --i) code = code * q + a.c[i].v;
    return code;
}

// Startup self-check: x4 + x5 is a two-sided identity on the basis, and the
// two bilinear-form routes agree on all 64 basis pairs.
inline void oct_self_check(const Field& F) {
    const Octonion one = oct_identity(F);
    for (int i = 0; i < 8; ++i) {
        const Octonion xi = oct_basis(F, i);
        check_internal(oct_mul(one, xi).c == xi.c, "identity fails on the left");
        check_internal(oct_mul(xi, one).c == xi.c, "identity fails on the right");
    }
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const Octonion xi = oct_basis(F, i), xj = oct_basis(F, j);
            const Fq via_trace = oct_bilinear(xi, xj);
            const Fq via_norm = F.sub(
                F.sub(oct_norm(oct_add(xi, xj)), oct_norm(xi)), oct_norm(xj));
            check_internal(via_trace == via_norm,
                           "bilinear form routes disagree on a basis pair");
        }
    }
}

}  // namespace tightset
