#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tightset/albert.hpp"
#include "tightset/common.hpp"
#include "tightset/galois.hpp"
#include "tightset/linalg.hpp"
#include "tightset/octonion.hpp"
#include "tightset/pointset.hpp"

// Construction of the distinguished tight point set M1.
//
// M1 is the image, in the 26- (or 25-) dimensional quadratic space W, of the
// rank-one trace-zero elements of the 27-dimensional exceptional Jordan
// algebra. Every such element falls into exactly one of three families,
// parametrized by octonion data:
//
//   type I    f * (N(A), N(B), 1 | conj(B), A, conj(A)*B)   N(A)+N(B)+1 = 0
//   type II   e * (N(C), 1, 0 | A, conj(C*A), C)            N(C) = -1, N(A) = 0
//   type III  (0, 0, 0 | D, E, F)                           N(D)=N(E)=N(F)=0,
//                                                           DE = EF = FD = 0,
//                                                           (D,E,F) != 0
//
// with f, e ranging over the nonzero scalars. The streams below enumerate
// each family exactly once per vector; every emitted element is checked
// inline to be trace-zero and singular for the base quadratic form.

namespace tightset {

// --- norm fiber caches ------------------------------------------------------

// fibers[n] lists every octonion of norm n (fibers[0] includes zero),
// in increasing code order.
inline std::vector<std::vector<Octonion>> norm_fibers(const Field& F) {
    const std::int64_t total = ipow(F.q(), 8);
    std::vector<std::vector<Octonion>> fibers(F.q());
    for (std::int64_t code = 0; code < total; ++code) {
        Octonion x = oct_from_code(F, static_cast<std::uint32_t>(code));
        fibers[oct_norm(x).v].push_back(x);
    }
    return fibers;
}

// Nonzero singular octonions, in increasing code order.
inline std::vector<Octonion> singular_nonzero(const Field& F) {
    std::vector<Octonion> out;
    const std::int64_t total = ipow(F.q(), 8);
    for (std::int64_t code = 1; code < total; ++code) {
        Octonion x = oct_from_code(F, static_cast<std::uint32_t>(code));
        if (oct_norm(x).v == 0) out.push_back(x);
    }
    return out;
}

namespace detail {

// Enumerate the span of a subspace basis, including zero, invoking
// visit(vector) for each element in a fixed order.
template <class Visit>
void for_span(const SubspaceBasis& s, const Visit& visit) {
    const Field& F = *s.field;
    check_internal(s.ambient == 8, "octonion span expects ambient dimension 8");
    const int r = s.dim();
    const std::int64_t n = ipow(F.q(), r);
    for (std::int64_t idx = 0; idx < n; ++idx) {
        std::int64_t t = idx;
        Octonion v = oct_zero(F);
        for (int i = 0; i < r; ++i) {
            Fq c = F.elem(static_cast<int>(t % F.q()));
            t /= F.q();
            if (c.v == 0) continue;
            for (int j = 0; j < 8; ++j)
                v.c[j] = F.add(v.c[j], F.mul(c, s.rows[i][j]));
        }
        visit(v);
    }
}

inline void check_white(const WSpace& ws, const AlbertElement& v) {
    (void)ws;
    check_internal(albert_trace(v).v == 0 && q0_eval(v).v == 0,
                   "stream emitted an element that is not trace-zero singular");
}

}  // namespace detail

// --- the three streams ------------------------------------------------------

// Each stream emits plain Jordan-algebra elements (all scalar multiples
// included) through sink(const AlbertElement&).

template <class Sink>
void enum_type1(const WSpace& ws, const std::vector<std::vector<Octonion>>& fibers,
                Sink&& sink) {
    const Field& F = *ws.field;
    for (int a = 0; a < F.q(); ++a) {
        const Fq na = F.elem(a);
        const Fq nb = F.sub(F.neg(F.one()), na);  // N(B) = -1 - N(A)
        for (const Octonion& A : fibers[na.v]) {
            const Octonion cA = oct_conj(A);
            for (const Octonion& B : fibers[nb.v]) {
                AlbertElement base = albert_make(F, na, nb, F.one(), oct_conj(B), A,
                                                 oct_mul(cA, B));
                detail::check_white(ws, base);
                for (int f = 1; f < F.q(); ++f)
                    sink(albert_scale(F.elem(f), base));
            }
        }
    }
}

template <class Sink>
void enum_type2(const WSpace& ws, const std::vector<std::vector<Octonion>>& fibers,
                Sink&& sink) {
    const Field& F = *ws.field;
    const Fq m1 = F.neg(F.one());
    for (const Octonion& C : fibers[m1.v]) {
        for (const Octonion& A : fibers[0]) {
            AlbertElement base =
                albert_make(F, m1, F.one(), F.zero(), A, oct_conj(oct_mul(C, A)), C);
            detail::check_white(ws, base);
            for (int e = 1; e < F.q(); ++e)
                sink(albert_scale(F.elem(e), base));
        }
    }
}

// Type III triples are produced without duplicates by splitting on which of
// D, E are zero:
//   D != 0:  E in ann_right(D) \ {0},  F in ann_left(D) /\ ann_right(E)
//   D != 0, E = 0:                     F in ann_left(D)
//   D  = 0:  E != 0 singular,          F in ann_right(E)
//   D  = 0, E = 0:                     F != 0 singular
template <class Sink>
void enum_type3(const WSpace& ws, const std::vector<Octonion>& singulars, Sink&& sink) {
    const Field& F = *ws.field;
    const Fq z = F.zero();
    const Octonion zero = oct_zero(F);

    auto emit = [&](const Octonion& D, const Octonion& E, const Octonion& Fo) {
        check_internal(oct_norm(D).v == 0 && oct_norm(E).v == 0 && oct_norm(Fo).v == 0 &&
                           oct_is_zero(oct_mul(D, E)) && oct_is_zero(oct_mul(E, Fo)) &&
                           oct_is_zero(oct_mul(Fo, D)),
                       "type III stream produced an invalid triple");
        AlbertElement v = albert_make(F, z, z, z, D, E, Fo);
        detail::check_white(ws, v);
        sink(v);
    };

    for (const Octonion& D : singulars) {
        const SubspaceBasis aL = ann_left(D);
        const SubspaceBasis aR = ann_right(D);
        detail::for_span(aR, [&](const Octonion& E) {
            if (oct_is_zero(E)) return;
            const SubspaceBasis meet = subspace_intersect(aL, ann_right(E));
            check_internal(meet.dim() == 3, "compatible pair with unexpected meet dimension");
            detail::for_span(meet, [&](const Octonion& Fo) { emit(D, E, Fo); });
        });
        detail::for_span(aL, [&](const Octonion& Fo) { emit(D, zero, Fo); });
    }
    for (const Octonion& E : singulars)
        detail::for_span(ann_right(E), [&](const Octonion& Fo) { emit(zero, E, Fo); });
    for (const Octonion& Fo : singulars) emit(zero, zero, Fo);
}

// --- full construction ------------------------------------------------------

struct M1Build {
    PointSet points;
    std::int64_t type1_vectors = 0;
    std::int64_t type2_vectors = 0;
    std::int64_t type3_vectors = 0;
    std::int64_t total_vectors() const {
        return type1_vectors + type2_vectors + type3_vectors;
    }
};

// Expected family sizes (vectors, i.e. counted with all q-1 scalings).
inline std::int64_t expect_type1_vectors(int q) {
    return (q - 1) * (ipow(q, 15) - ipow(q, 7));
}
inline std::int64_t expect_type2_vectors(int q) {
    return (q - 1) * (ipow(q, 7) - ipow(q, 3)) * (ipow(q, 7) - ipow(q, 3) + ipow(q, 4));
}
inline std::int64_t expect_type3_vectors(int q) {
    const std::int64_t w = ipow(q, 7) - ipow(q, 3) + ipow(q, 4) - 1;
    return w * (ipow(q, 7) - ipow(q, 3) + 2 * ipow(q, 4) + 1);
}
inline std::int64_t expect_m1_vectors(int q) {
    return (ipow(q, 4) + 1) * (ipow(q, 12) - 1);
}
inline std::int64_t expect_m1_points(int q) { return expect_m1_vectors(q) / (q - 1); }

// Construct M1 as a packed point set. Feasible for q in {2, 3}; larger
// fields are rejected with a size estimate.
inline M1Build build_m1(const WSpace& ws) {
    const Field& F = *ws.field;
    const int q = F.q();
    if (q > 3) {
        const std::int64_t vectors = expect_m1_vectors(q);
        check_config(false, "full construction is supported for q in {2, 3}; q = " +
                                std::to_string(q) + " would enumerate " +
                                std::to_string(vectors) + " vectors (about " +
                                std::to_string(vectors / (q - 1) * 8 / (1 << 20)) +
                                " MiB of packed points) and is out of scope");
    }

    M1Build out;
    out.points.p = F.p();
    out.points.f = F.f();
    out.points.dim = ws.dim;
    out.points.bits = bits_for_q(q);
    out.points.basis = ws.basis_version;
    std::vector<std::uint64_t>& codes = out.points.codes;
    codes.reserve(static_cast<std::size_t>(expect_m1_vectors(q)));

    const int dim = ws.dim;
    const int bits = out.points.bits;
    auto sink_for = [&ws, &codes, dim, bits](std::int64_t* counter) {
        return [&ws, &codes, dim, bits, counter](const AlbertElement& v) {
            ++*counter;
            WCoords c = w_project(ws, v);
            w_canonicalize(ws, c);
            codes.push_back(pack_coords(c, dim, bits));
        };
    };

    const std::vector<std::vector<Octonion>> fibers = norm_fibers(F);
    enum_type1(ws, fibers, sink_for(&out.type1_vectors));
    enum_type2(ws, fibers, sink_for(&out.type2_vectors));
    const std::vector<Octonion> singulars = singular_nonzero(F);
    enum_type3(ws, singulars, sink_for(&out.type3_vectors));

    check_internal(out.type1_vectors == expect_type1_vectors(q) &&
                       out.type2_vectors == expect_type2_vectors(q) &&
                       out.type3_vectors == expect_type3_vectors(q),
                   "stream sizes disagree with the counting formulas");
    check_internal(out.total_vectors() == expect_m1_vectors(q),
                   "total vector count disagrees with (q^4+1)(q^12-1)");

    // Collapse scalar classes: every point must be hit by exactly q-1 vectors.
    std::sort(codes.begin(), codes.end());
    std::vector<std::uint64_t> unique_codes;
    unique_codes.reserve(codes.size() / (q - 1));
    for (std::size_t i = 0; i < codes.size();) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) ++j;
        check_internal(j - i == static_cast<std::size_t>(q - 1),
                       "a projective point was produced with the wrong multiplicity");
        unique_codes.push_back(codes[i]);
        i = j;
    }
    codes = std::move(unique_codes);
    check_internal(out.points.count() == expect_m1_points(q),
                   "point count disagrees with (q^4+1)(q^12-1)/(q-1)");
    return out;
}

// --- slice census -----------------------------------------------------------

// Independent census of M1 /\ P^perp for the base point P = [(0,0,0 | x1,0,0)]:
// an element lies in the slice exactly when the last coordinate of its D-slot
// vanishes. Counts are points, split by family (type III by how many of
// D, E, F are nonzero: case 1 = three, case 2 = two, case 3 = one).
struct SliceCensus {
    std::int64_t type1 = 0, type2 = 0;
    std::int64_t case1 = 0, case2 = 0, case3 = 0;
    std::int64_t expected_type1 = 0, expected_type2 = 0;
    std::int64_t expected_case1 = 0, expected_case2 = 0, expected_case3 = 0;

    std::int64_t grand() const { return type1 + type2 + case1 + case2 + case3; }
    std::int64_t expected_grand = 0;
    bool ok() const {
        return type1 == expected_type1 && type2 == expected_type2 &&
               case1 == expected_case1 && case2 == expected_case2 &&
               case3 == expected_case3 && grand() == expected_grand;
    }
};

inline SliceCensus perp_slice_census(const WSpace& ws) {
    const Field& F = *ws.field;
    const int q = F.q();
    check_config(q <= 3, "the slice census enumerates full fibers; feasible for q in {2, 3}");

    SliceCensus out;
    const std::vector<std::vector<Octonion>> fibers = norm_fibers(F);

    // Type I: pairs (A, B) with N(A) + N(B) + 1 = 0 and the B-slot constraint
    // (the D-slot of the element is conj(B), whose last coordinate is -B.c[7]).
    std::int64_t pairs1 = 0;
    for (int a = 0; a < q; ++a) {
        const Fq nb = F.sub(F.neg(F.one()), F.elem(a));
        for (const Octonion& A : fibers[a]) {
            (void)A;
            for (const Octonion& B : fibers[nb.v])
                if (B.c[7].v == 0) ++pairs1;
        }
    }
    out.type1 = pairs1;  // one point per parameter pair

    // Type II: pairs (C, A) with N(C) = -1, N(A) = 0, D-slot = A constrained.
    std::int64_t pairs2 = 0;
    const Fq m1 = F.neg(F.one());
    for (const Octonion& C : fibers[m1.v]) {
        (void)C;
        for (const Octonion& A : fibers[0])
            if (A.c[7].v == 0) ++pairs2;
    }
    out.type2 = pairs2;

    // Type III: rerun the duplicate-free triple enumeration with the D-slot
    // constraint, counting vectors per case; divide by q-1 at the end.
    std::int64_t v1 = 0, v2 = 0, v3 = 0;
    const std::vector<Octonion> singulars = singular_nonzero(F);
    const Octonion zero = oct_zero(F);
    for (const Octonion& D : singulars) {
        if (D.c[7].v != 0) continue;
        const SubspaceBasis aL = ann_left(D);
        const SubspaceBasis aR = ann_right(D);
        detail::for_span(aR, [&](const Octonion& E) {
            if (oct_is_zero(E)) return;
            const SubspaceBasis meet = subspace_intersect(aL, ann_right(E));
            detail::for_span(meet, [&](const Octonion& Fo) {
                oct_is_zero(Fo) ? ++v2 : ++v1;
            });
        });
        detail::for_span(aL, [&](const Octonion& Fo) {
            oct_is_zero(Fo) ? ++v3 : ++v2;
        });
    }
    for (const Octonion& E : singulars)
        detail::for_span(ann_right(E), [&](const Octonion& Fo) {
            oct_is_zero(Fo) ? ++v3 : ++v2;
        });
    v3 += static_cast<std::int64_t>(singulars.size());

    check_internal(v1 % (q - 1) == 0 && v2 % (q - 1) == 0 && v3 % (q - 1) == 0,
                   "slice vector counts are not divisible by q-1");
    out.case1 = v1 / (q - 1);
    out.case2 = v2 / (q - 1);
    out.case3 = v3 / (q - 1);

    // Closed forms. wc counts constrained nonzero singular octonions,
    // wu unconstrained ones.
    const std::int64_t q3 = ipow(q, 3), q4 = ipow(q, 4), q6 = ipow(q, 6), q7 = ipow(q, 7);
    const std::int64_t wc = q6 - q3 + q4 - 1;
    const std::int64_t wu = q7 - q3 + q4 - 1;
    out.expected_type1 = q7 * (q7 - 1);
    out.expected_type2 = (q7 - q3) * (q6 - q3 + q4);
    out.expected_case1 = wc * (q4 - 1) / (q - 1) * (q3 - 1);
    out.expected_case2 = (2 * wc + wu) * (q4 - 1) / (q - 1);
    out.expected_case3 = (wc + 2 * wu) / (q - 1);
    out.expected_grand =
        ipow(q, 11) + (q4 + 1) * (ipow(q, 11) - 1) / (q - 1);
    return out;
}

}  // namespace tightset
