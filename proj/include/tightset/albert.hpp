#pragma once

#include <array>
#include <string>
#include <vector>

#include "tightset/common.hpp"
#include "tightset/octonion.hpp"

// The 27-dimensional algebra of Hermitian 3x3 octonion matrices and the
// quadratic space carved out of its trace-zero elements.
//
// An element (s0, s1, s2 | D, E, F) is the matrix
//      [ s0   F    conj(E) ]
//      [ conj(F)  s1   D   ]
//      [ E    conj(D)  s2  ]
// with scalars embedded as multiples of the octonion identity. The product
// u o v = uv + vu is computed by literal 3x3 octonion matrix multiplication
// and checked to land back in Hermitian form. On trace-zero elements the
// quadratic form is
//      Q0(v) = s0^2 + s0 s1 + s1^2 + N(D) + N(E) + N(F),
// with bilinear form B0(u, v) = Q0(u+v) - Q0(u) - Q0(v).
//
// W is the trace-zero space modulo its radical: in characteristic 3 the
// identity I spans the radical and W has dimension 25, otherwise 26. The
// fixed coordinate basis is tagged "F4-min-v1" and is what the packed point
// formats are expressed in.

namespace tightset {

struct AlbertElement {
    const Field* field = nullptr;
    Fq s0, s1, s2;
    Octonion d, e, f;
};

inline AlbertElement albert_zero(const Field& F) {
    return AlbertElement{&F, F.zero(), F.zero(), F.zero(),
                         oct_zero(F), oct_zero(F), oct_zero(F)};
}

inline AlbertElement albert_make(const Field& F, Fq s0, Fq s1, Fq s2,
                                 const Octonion& d, const Octonion& e,
                                 const Octonion& f) {
    check_config(d.field == &F && e.field == &F && f.field == &F,
                 "mixed-field slots");
    return AlbertElement{&F, s0, s1, s2, d, e, f};
}

inline AlbertElement albert_identity(const Field& F) {
    AlbertElement r = albert_zero(F);
    r.s0 = r.s1 = r.s2 = F.one();
    return r;
}

inline AlbertElement albert_add(const AlbertElement& u, const AlbertElement& v) {
    check_config(u.field == v.field, "mixed-field operands");
    const Field& F = *u.field;
    return AlbertElement{u.field, F.add(u.s0, v.s0), F.add(u.s1, v.s1),
                         F.add(u.s2, v.s2), oct_add(u.d, v.d),
                         oct_add(u.e, v.e), oct_add(u.f, v.f)};
}

inline AlbertElement albert_scale(Fq c, const AlbertElement& u) {
    const Field& F = *u.field;
    return AlbertElement{u.field, F.mul(c, u.s0), F.mul(c, u.s1), F.mul(c, u.s2),
                         oct_scale(c, u.d), oct_scale(c, u.e), oct_scale(c, u.f)};
}

inline AlbertElement albert_sub(const AlbertElement& u, const AlbertElement& v) {
    return albert_add(u, albert_scale(u.field->neg(u.field->one()), v));
}

inline bool albert_is_zero(const AlbertElement& u) {
    return u.s0.v == 0 && u.s1.v == 0 && u.s2.v == 0 && oct_is_zero(u.d) &&
           oct_is_zero(u.e) && oct_is_zero(u.f);
}

inline Fq albert_trace(const AlbertElement& u) {
    return u.field->add(u.field->add(u.s0, u.s1), u.s2);
}

namespace detail {

using OctMat3 = std::array<Octonion, 9>;  // row-major 3x3

inline Octonion scalar_oct(const Field& F, Fq s) {
    Octonion r = oct_zero(F);
    r.c[3] = s;
    r.c[4] = s;
    return r;
}

inline OctMat3 to_matrix(const AlbertElement& u) {
    const Field& F = *u.field;
    return OctMat3{scalar_oct(F, u.s0), u.f,           oct_conj(u.e),
                   oct_conj(u.f),       scalar_oct(F, u.s1), u.d,
                   u.e,                 oct_conj(u.d), scalar_oct(F, u.s2)};
}

inline OctMat3 mat_mul(const Field& F, const OctMat3& a, const OctMat3& b) {
    OctMat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Octonion acc = oct_zero(F);
            for (int k = 0; k < 3; ++k)
                acc = oct_add(acc, oct_mul(a[i * 3 + k], b[k * 3 + j]));
            r[i * 3 + j] = acc;
        }
    return r;
}

// Check the 3x3 octonion matrix is Hermitian with scalar diagonal and read
// it back as an element; violations mean the algebra product broke.
inline AlbertElement from_matrix(const Field& F, const OctMat3& m) {
    auto scalar_part = [&](const Octonion& o) {
        check_internal(o.c[3] == o.c[4], "diagonal entry is not scalar");
        for (int i : {0, 1, 2, 5, 6, 7})
            check_internal(o.c[i].v == 0, "diagonal entry is not scalar");
        return o.c[3];
    };
    AlbertElement r = albert_zero(F);
    r.s0 = scalar_part(m[0]);
    r.s1 = scalar_part(m[4]);
    r.s2 = scalar_part(m[8]);
    r.f = m[1];
    r.e = m[6];
    r.d = m[5];
    check_internal(oct_conj(m[1]).c == m[3].c, "matrix is not Hermitian");
    check_internal(oct_conj(m[6]).c == m[2].c, "matrix is not Hermitian");
    check_internal(oct_conj(m[5]).c == m[7].c, "matrix is not Hermitian");
    return r;
}

}  // namespace detail

// u o v = uv + vu via literal octonion matrix products.
inline AlbertElement jordan_product(const AlbertElement& u, const AlbertElement& v) {
    check_config(u.field == v.field, "mixed-field operands");
    const Field& F = *u.field;
    const detail::OctMat3 mu = detail::to_matrix(u), mv = detail::to_matrix(v);
    const detail::OctMat3 uv = detail::mat_mul(F, mu, mv);
    const detail::OctMat3 vu = detail::mat_mul(F, mv, mu);
    detail::OctMat3 sum;
    for (int i = 0; i < 9; ++i) sum[i] = oct_add(uv[i], vu[i]);
    return detail::from_matrix(F, sum);
}

// Q0 on the trace-zero subspace.
inline Fq q0_eval(const AlbertElement& u) {
    const Field& F = *u.field;
    check_config(albert_trace(u).v == 0, "Q0 requires a trace-zero element");
    Fq s = F.add(F.add(F.mul(u.s0, u.s0), F.mul(u.s0, u.s1)), F.mul(u.s1, u.s1));
    s = F.add(s, oct_norm(u.d));
    s = F.add(s, oct_norm(u.e));
    s = F.add(s, oct_norm(u.f));
    return s;
}

inline Fq b0_eval(const AlbertElement& u, const AlbertElement& v) {
    const Field& F = *u.field;
    return F.sub(F.sub(q0_eval(albert_add(u, v)), q0_eval(u)), q0_eval(v));
}

// Second symmetric invariant S(u): the sum of the diagonal entries of the
// adjoint, a quadratic form in every characteristic.
inline Fq sigma_eval(const AlbertElement& u) {
    const Field& F = *u.field;
    Fq s = F.add(F.add(F.mul(u.s0, u.s1), F.mul(u.s1, u.s2)), F.mul(u.s0, u.s2));
    s = F.sub(s, oct_norm(u.d));
    s = F.sub(s, oct_norm(u.e));
    s = F.sub(s, oct_norm(u.f));
    return s;
}

// Adjoint u# = u^2 - Tr(u) u + S(u) I, computed through the literal matrix
// square (the square of a Hermitian matrix is Hermitian, so the read-back
// checks it). An element has rank <= 1 exactly when its adjoint vanishes.
inline AlbertElement albert_sharp(const AlbertElement& u) {
    const Field& F = *u.field;
    const detail::OctMat3 m = detail::to_matrix(u);
    detail::OctMat3 sq = detail::mat_mul(F, m, m);
    const Fq t = albert_trace(u);
    const Octonion s = detail::scalar_oct(F, sigma_eval(u));
    for (int i = 0; i < 9; ++i) {
        sq[i] = oct_sub(sq[i], oct_scale(t, m[i]));
        if (i % 4 == 0) sq[i] = oct_add(sq[i], s);
    }
    return detail::from_matrix(F, sq);
}

inline bool albert_is_rank_one(const AlbertElement& u) {
    return !albert_is_zero(u) && albert_is_zero(albert_sharp(u));
}

// ---------------------------------------------------------------------------
// W: trace-zero elements modulo the radical, with the fixed "F4-min-v1" basis.

inline constexpr int kMaxWDim = 26;
using WCoords = std::array<Fq, kMaxWDim>;

struct WSpace {
    const Field* field = nullptr;
    bool char3 = false;
    int dim = 0;
    std::string basis_version;
    std::vector<AlbertElement> basis;
    std::vector<Fq> gram;   // dim x dim, row-major: B0(e_i, e_j)
    std::vector<Fq> qdiag;  // Q0(e_i)

    Fq gram_at(int i, int j) const {
        return gram[static_cast<std::size_t>(i) * dim + j];
    }
};

inline WSpace wspace_make(const Field& F) {
    check_config(F.p() == 3 || F.q() % 3 == 2,
                 "W requires characteristic 3 or q = 2 (mod 3); "
                 "q = 1 (mod 3) gives a non-elliptic setup outside scope");
    oct_self_check(F);
    WSpace ws;
    ws.field = &F;
    ws.char3 = (F.p() == 3);
    ws.dim = ws.char3 ? 25 : 26;
    ws.basis_version = "F4-min-v1";

    auto diag = [&](int i) {  // w0, w0', w0''
        AlbertElement a = albert_zero(F);
        (i == 0 ? a.s0 : i == 1 ? a.s1 : a.s2) = F.one();
        return a;
    };
    auto slot = [&](int which, int i) {  // D / E / F slot with x_{i+1}
        AlbertElement a = albert_zero(F);
        (which == 0 ? a.d : which == 1 ? a.e : a.f) = oct_basis(F, i);
        return a;
    };

    ws.basis.push_back(albert_sub(diag(0), diag(1)));           // w0 - w0'
    if (!ws.char3)
        ws.basis.push_back(albert_sub(diag(1), diag(2)));       // w0' - w0''
    for (int which = 0; which < 3; ++which)
        for (int i = 0; i < 8; ++i) ws.basis.push_back(slot(which, i));
    check_internal(static_cast<int>(ws.basis.size()) == ws.dim,
                   "basis size mismatch");

    ws.qdiag.resize(ws.dim);
    ws.gram.resize(static_cast<std::size_t>(ws.dim) * ws.dim);
    for (int i = 0; i < ws.dim; ++i) {
        check_internal(albert_trace(ws.basis[i]).v == 0, "basis not trace-zero");
        ws.qdiag[i] = q0_eval(ws.basis[i]);
        for (int j = 0; j < ws.dim; ++j)
            ws.gram[static_cast<std::size_t>(i) * ws.dim + j] =
                b0_eval(ws.basis[i], ws.basis[j]);
    }

    // The form must be nondegenerate on W.
    MatrixFq g(F, ws.dim, ws.dim);
    g.a = ws.gram;
    check_internal(matrix_rank(g) == ws.dim, "degenerate form on W");
    return ws;
}

// Coordinates of a trace-zero element in the W basis. In characteristic 3
// the element is first moved to its canonical coset representative
// v - s2 * I, so cosets mod <I> project to equal coordinates.
inline WCoords w_project(const WSpace& ws, const AlbertElement& v) {
    const Field& F = *ws.field;
    check_config(v.field == &F, "mixed-field operands");
    check_config(albert_trace(v).v == 0, "projection requires a trace-zero element");
    WCoords c{};
    int base;
    if (ws.char3) {
        c[0] = F.sub(v.s0, v.s2);
        base = 1;
    } else {
        c[0] = v.s0;
        c[1] = F.neg(v.s2);
        base = 2;
    }
    for (int i = 0; i < 8; ++i) {
        c[base + i] = v.d.c[i];
        c[base + 8 + i] = v.e.c[i];
        c[base + 16 + i] = v.f.c[i];
    }
    return c;
}

// Canonical lift: the unique preimage with s2 = 0 (char 3) or the exact
// preimage (otherwise).
inline AlbertElement w_lift(const WSpace& ws, const WCoords& c) {
    const Field& F = *ws.field;
    AlbertElement v = albert_zero(F);
    int base;
    if (ws.char3) {
        v.s0 = c[0];
        v.s1 = F.neg(c[0]);
        v.s2 = F.zero();
        base = 1;
    } else {
        v.s0 = c[0];
        v.s2 = F.neg(c[1]);
        v.s1 = F.neg(F.add(v.s0, v.s2));
        base = 2;
    }
    for (int i = 0; i < 8; ++i) {
        v.d.c[i] = c[base + i];
        v.e.c[i] = c[base + 8 + i];
        v.f.c[i] = c[base + 16 + i];
    }
    v.d.field = v.e.field = v.f.field = &F;
    return v;
}

inline Fq w_q_eval(const WSpace& ws, const WCoords& c) {
    const Field& F = *ws.field;
    Fq acc = F.zero();
    for (int i = 0; i < ws.dim; ++i) {
        if (c[i].v == 0) continue;
        acc = F.add(acc, F.mul(F.mul(c[i], c[i]), ws.qdiag[i]));
        for (int j = i + 1; j < ws.dim; ++j) {
            if (c[j].v == 0) continue;
            acc = F.add(acc, F.mul(F.mul(c[i], c[j]), ws.gram_at(i, j)));
        }
    }
    return acc;
}

inline Fq w_b_eval(const WSpace& ws, const WCoords& u, const WCoords& v) {
    const Field& F = *ws.field;
    Fq acc = F.zero();
    for (int i = 0; i < ws.dim; ++i) {
        if (u[i].v == 0) continue;
        Fq row = F.zero();
        for (int j = 0; j < ws.dim; ++j) {
            if (v[j].v == 0) continue;
            row = F.add(row, F.mul(v[j], ws.gram_at(i, j)));
        }
        acc = F.add(acc, F.mul(u[i], row));
    }
    return acc;
}

// Scale so the first nonzero coordinate is 1; the projective representative.
inline void w_canonicalize(const WSpace& ws, WCoords& c) {
    const Field& F = *ws.field;
    for (int i = 0; i < ws.dim; ++i) {
        if (c[i].v == 0) continue;
        if (c[i].v != 1) {
            const Fq s = F.inv(c[i]);
            for (int j = i; j < ws.dim; ++j) c[j] = F.mul(s, c[j]);
        }
        return;
    }
    throw config_error("cannot canonicalize the zero vector");
}

}  // namespace tightset
