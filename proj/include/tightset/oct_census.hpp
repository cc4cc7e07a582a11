#pragma once

#include <cstdint>
#include <vector>

#include "tightset/common.hpp"
#include "tightset/octonion.hpp"

// Counting oracles over the octonion algebra: each census enumerates a set
// exhaustively and pairs the tally with the closed-form count it must equal.
// The enumeration side never uses the formula it is checking against.

namespace tightset {

struct CountCheck {
    long long enumerated = 0;
    long long expected = 0;
    bool ok() const { return enumerated == expected; }
};

// Tuples (a_1, b_1, ..., a_k, b_k) in F^(2k) with sum a_i b_i = target.
// Expected: q^(2k-1) - q^(k-1) + q^k [target = 0].
inline CountCheck census_pair_sums(const Field& F, int k, Fq target) {
    check_config(k >= 1 && k <= 8, "pair-sum rank out of range");
    const std::int64_t q = F.q();
    const std::int64_t total = ipow(q, 2 * k);
    check_config(total <= 100000000, "pair-sum enumeration bound exceeded");
    CountCheck r;
    std::vector<Fq> t(2 * k, F.zero());
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t rem = code;
        for (int i = 0; i < 2 * k; ++i) {
            t[i] = Fq{static_cast<std::uint16_t>(rem % q)};
            rem /= q;
        }
        Fq acc = F.zero();
        for (int i = 0; i < k; ++i) acc = F.add(acc, F.mul(t[2 * i], t[2 * i + 1]));
        if (acc == target) ++r.enumerated;
    }
    r.expected = ipow(q, 2 * k - 1) - ipow(q, k - 1) + (target.v == 0 ? ipow(q, k) : 0);
    return r;
}

// Octonion norm fibers, full and restricted to the hyperplane l8 = 0.
// Expected: q^7 - q^3 + q^4 [a = 0]  and  q^6 - q^3 + q^4 [a = 0].
struct NormFiberCheck {
    CountCheck full;
    CountCheck constrained;
    bool ok() const { return full.ok() && constrained.ok(); }
};

inline NormFiberCheck census_norm_fiber(const Field& F, Fq a) {
    const std::int64_t q = F.q();
    const std::int64_t total = ipow(q, 8);
    check_config(total <= 100000000, "norm-fiber enumeration bound exceeded");
    oct_self_check(F);
    NormFiberCheck r;
    for (std::int64_t code = 0; code < total; ++code) {
        const Octonion x = oct_from_code(F, static_cast<std::uint32_t>(code));
        if (oct_norm(x) == a) {
            ++r.full.enumerated;
            if (x.c[7].v == 0) ++r.constrained.enumerated;
        }
    }
    const std::int64_t bump = (a.v == 0) ? ipow(q, 4) : 0;
    r.full.expected = ipow(q, 7) - ipow(q, 3) + bump;
    r.constrained.expected = ipow(q, 6) - ipow(q, 3) + bump;
    return r;
}

// Pairs (D, E) of nonzero octonions with D E = 0 and l8(D) = 0, counted by
// a direct double loop. Expected: (q^6 - q^3 + q^4 - 1)(q^4 - 1).
inline CountCheck census_zero_product_pairs(const Field& F) {
    const std::int64_t q = F.q();
    check_config(q <= 3, "zero-product pair enumeration is exhaustive only for q <= 3");
    oct_self_check(F);
    const std::int64_t total = ipow(q, 8);
    CountCheck r;
    for (std::int64_t dcode = 1; dcode < total; ++dcode) {
        const Octonion d = oct_from_code(F, static_cast<std::uint32_t>(dcode));
        if (d.c[7].v != 0) continue;
        for (std::int64_t ecode = 1; ecode < total; ++ecode) {
            const Octonion e = oct_from_code(F, static_cast<std::uint32_t>(ecode));
            if (oct_is_zero(oct_mul(d, e))) ++r.enumerated;
        }
    }
    r.expected = checked_mul(ipow(q, 6) - ipow(q, 3) + ipow(q, 4) - 1, ipow(q, 4) - 1);
    return r;
}

// (trace, norm) fibers of the whole algebra. Every fiber must hit one of
// three sizes determined by the automorphism-orbit decomposition:
//   q odd:  with k = t/2, the fiber (t, n) has size q^6 if n = k^2,
//           q^6 + q^3 if k^2 - n is a nonzero square, q^6 - q^3 otherwise;
//   q even: (0, n) has size q^6; for t != 0 the size is q^6 + q^3 when
//           n / t^2 has absolute trace 0 and q^6 - q^3 otherwise.
struct OrbitFiberCheck {
    Fq trace, norm;
    long long size = 0;
    long long expected = 0;
    bool ok() const { return size == expected; }
};

inline std::vector<OrbitFiberCheck> census_orbit_fibers(const Field& F) {
    const std::int64_t q = F.q();
    check_config(q > 2, "orbit fiber census requires q > 2");
    const std::int64_t total = ipow(q, 8);
    check_config(total <= 100000000, "orbit fiber enumeration bound exceeded");
    oct_self_check(F);
    std::vector<long long> bins(static_cast<std::size_t>(q) * q, 0);
    for (std::int64_t code = 0; code < total; ++code) {
        const Octonion x = oct_from_code(F, static_cast<std::uint32_t>(code));
        ++bins[static_cast<std::size_t>(oct_trace(x).v) * q + oct_norm(x).v];
    }
    std::vector<OrbitFiberCheck> out;
    out.reserve(static_cast<std::size_t>(q) * q);
    const std::int64_t q6 = ipow(q, 6), q3 = ipow(q, 3);
    for (int t = 0; t < q; ++t) {
        for (int n = 0; n < q; ++n) {
            OrbitFiberCheck e;
            e.trace = F.elem(t);
            e.norm = F.elem(n);
            e.size = bins[static_cast<std::size_t>(t) * q + n];
            if (F.p() != 2) {
                const Fq k = F.mul(F.elem(t), F.inv(F.scalar(2)));
                const Fq d = F.sub(F.mul(k, k), F.elem(n));
                if (d.v == 0)
                    e.expected = q6;
                else
                    e.expected = F.is_square(d) ? q6 + q3 : q6 - q3;
            } else {
                if (t == 0)
                    e.expected = q6;
                else {
                    const Fq ratio =
                        F.mul(F.elem(n), F.inv(F.mul(F.elem(t), F.elem(t))));
                    e.expected = F.absolute_trace(ratio) == 0 ? q6 + q3 : q6 - q3;
                }
            }
            out.push_back(e);
        }
    }
    return out;
}

// Exhaustive annihilator structure check (q <= 3): every nonzero singular a
// has 4-dimensional one-sided annihilators whose meet has dimension 3 when
// Tr(a) = 0 and 1 otherwise; every nonzero b with a b = 0 is singular and
// dim(ann_left(a) meet ann_right(b)) = 3.
struct AnnihilatorCheck {
    long long singular_nonzero = 0;
    long long expected_singular_nonzero = 0;
    long long zero_product_pairs = 0;
    long long expected_zero_product_pairs = 0;
    long long violations = 0;
    bool ok() const {
        return violations == 0 && singular_nonzero == expected_singular_nonzero &&
               zero_product_pairs == expected_zero_product_pairs;
    }
};

inline AnnihilatorCheck census_annihilators(const Field& F) {
    const std::int64_t q = F.q();
    check_config(q <= 3, "annihilator census is exhaustive only for q <= 3");
    oct_self_check(F);
    const std::int64_t total = ipow(q, 8);
    AnnihilatorCheck r;
    r.expected_singular_nonzero = ipow(q, 7) - ipow(q, 3) + ipow(q, 4) - 1;
    r.expected_zero_product_pairs =
        checked_mul(r.expected_singular_nonzero, ipow(q, 4) - 1);
    for (std::int64_t code = 1; code < total; ++code) {
        const Octonion a = oct_from_code(F, static_cast<std::uint32_t>(code));
        const bool singular = oct_norm(a).v == 0;
        const SubspaceBasis al = ann_left(a), ar = ann_right(a);
        if (!singular) {
            if (al.dim() != 0 || ar.dim() != 0) ++r.violations;
            continue;
        }
        ++r.singular_nonzero;
        if (al.dim() != 4 || ar.dim() != 4) {
            ++r.violations;
            continue;
        }
        const int expected_meet = oct_trace(a).v == 0 ? 3 : 1;
        if (subspace_intersect(al, ar).dim() != expected_meet) ++r.violations;
        // Walk ann_right(a) \ {0}: all b with a b = 0.
        const std::int64_t combos = ipow(q, 4);
        for (std::int64_t bc = 1; bc < combos; ++bc) {
            Octonion b = oct_zero(F);
            std::int64_t rem = bc;
            for (int i = 0; i < 4; ++i) {
                const Fq coef = Fq{static_cast<std::uint16_t>(rem % q)};
                rem /= q;
                if (coef.v == 0) continue;
                for (int j = 0; j < 8; ++j)
                    b.c[j] = F.add(b.c[j], F.mul(coef, ar.rows[i][j]));
            }
            ++r.zero_product_pairs;
            if (!oct_is_zero(oct_mul(a, b)) || oct_norm(b).v != 0 ||
                subspace_intersect(al, ann_right(b)).dim() != 3)
                ++r.violations;
        }
    }
    return r;
}

}  // namespace tightset
