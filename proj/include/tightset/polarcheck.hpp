#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tightset/albert.hpp"
#include "tightset/common.hpp"
#include "tightset/galois.hpp"
#include "tightset/linalg.hpp"
#include "tightset/parallel.hpp"
#include "tightset/pointset.hpp"
#include "tightset/rng.hpp"

// Finite classical polar spaces: parameter arithmetic (rank, ovoid number,
// point counts, tight-set and m-ovoid targets) and the verification engine
// that counts perp intersections of packed point sets.

namespace tightset {

// --- families and parameters ------------------------------------------------

enum class PolarFamily { symplectic, hyperbolic, elliptic, parabolic, hermitian };

inline const char* family_name(PolarFamily f) {
    switch (f) {
        case PolarFamily::symplectic: return "W";
        case PolarFamily::hyperbolic: return "Q+";
        case PolarFamily::elliptic: return "Q-";
        case PolarFamily::parabolic: return "Q";
        case PolarFamily::hermitian: return "H";
    }
    return "?";
}

inline std::optional<PolarFamily> family_from_token(std::string t) {
    for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "w") return PolarFamily::symplectic;
    if (t == "qplus" || t == "q+") return PolarFamily::hyperbolic;
    if (t == "qminus" || t == "q-") return PolarFamily::elliptic;
    if (t == "q") return PolarFamily::parabolic;
    if (t == "h") return PolarFamily::hermitian;
    return std::nullopt;
}

// (q^r - 1) / (q - 1) = 1 + q + ... + q^{r-1}, overflow-checked.
inline std::int64_t geometric_sum(std::int64_t q, int r) {
    std::int64_t s = 0, term = 1;
    for (int i = 0; i < r; ++i) {
        s += term;
        if (i + 1 < r) term = checked_mul(term, q);
    }
    return s;
}

struct PolarParams {
    PolarFamily family;
    int d = 0;  // ambient vector dimension
    int p = 0, f = 0;
    std::int64_t q = 0;
    int rank = 0;
    std::int64_t ovoid_number = 0;  // theta_r
    std::int64_t point_count = 0;   // theta_r * (q^rank - 1)/(q - 1)
    std::int64_t theta_lower = 0;   // theta_{rank-1}: (theta_r - 1)/q + 1
};

inline PolarParams polar_params(PolarFamily fam, int d, int p, int f) {
    check_config(p >= 2 && f >= 1 && d >= 2, "parameters out of range");
    PolarParams P;
    P.family = fam;
    P.d = d;
    P.p = p;
    P.f = f;
    P.q = ipow(p, f);
    const std::int64_t q = P.q;
    switch (fam) {
        case PolarFamily::symplectic:
            check_config(d % 2 == 0, "the alternating form needs even dimension");
            P.rank = d / 2;
            P.ovoid_number = ipow(q, d / 2) + 1;
            break;
        case PolarFamily::hyperbolic:
            check_config(d % 2 == 0, "a hyperbolic space has even dimension");
            P.rank = d / 2;
            P.ovoid_number = ipow(q, d / 2 - 1) + 1;
            break;
        case PolarFamily::elliptic:
            check_config(d % 2 == 0 && d >= 4, "an elliptic space has even dimension >= 4");
            P.rank = d / 2 - 1;
            P.ovoid_number = ipow(q, d / 2) + 1;
            break;
        case PolarFamily::parabolic:
            check_config(d % 2 == 1, "a parabolic space has odd dimension");
            P.rank = (d - 1) / 2;
            P.ovoid_number = ipow(q, (d - 1) / 2) + 1;
            break;
        case PolarFamily::hermitian: {
            check_config(f % 2 == 0, "a hermitian form needs a square field");
            const std::int64_t s = ipow(p, f / 2);
            if (d % 2 == 0) {
                P.rank = d / 2;
                P.ovoid_number = ipow(s, d - 1) + 1;
            } else {
                P.rank = (d - 1) / 2;
                P.ovoid_number = ipow(s, d) + 1;
            }
            break;
        }
    }
    check_config(P.rank >= 1, "polar rank must be positive");
    P.point_count = checked_mul(P.ovoid_number, geometric_sum(q, P.rank));
    if ((P.ovoid_number - 1) % q == 0) {
        P.theta_lower = (P.ovoid_number - 1) / q + 1;
    } else {
        // Only rank-1 hyperbolic / even-dimensional hermitian spaces land here;
        // the lower ovoid number has no defined continuation for them.
        check_internal(P.rank == 1, "ovoid number has the wrong shape");
        P.theta_lower = 0;
    }
    return P;
}

// --- tight-set / m-ovoid targets ---------------------------------------------

struct TightTarget {
    std::int64_t i = 0;  // tight parameter (0 when this is an ovoid target)
    std::int64_t m = 0;  // ovoid parameter (0 when this is a tight target)
    std::int64_t set_size = 0;
    std::int64_t h1 = 0;  // member perp count
    std::int64_t h2 = 0;  // nonmember perp count
};

inline TightTarget tight_target(std::int64_t i, const PolarParams& P) {
    check_config(i >= 1, "tight parameter must be positive");
    TightTarget t;
    t.i = i;
    t.set_size = checked_mul(i, geometric_sum(P.q, P.rank));
    const std::int64_t g = geometric_sum(P.q, P.rank - 1);
    t.h2 = checked_mul(i, g);
    t.h1 = ipow(P.q, P.rank - 1) + t.h2;
    return t;
}

inline TightTarget ovoid_target(std::int64_t m, const PolarParams& P) {
    check_config(m >= 1, "ovoid parameter must be positive");
    check_config(P.theta_lower > 0,
                 "m-ovoid intersection numbers are undefined for this space");
    TightTarget t;
    t.m = m;
    t.set_size = checked_mul(m, P.ovoid_number);
    t.h1 = checked_mul(m - 1, P.theta_lower) + 1;
    t.h2 = checked_mul(m, P.theta_lower);
    return t;
}

struct SizeHypothesis {
    std::optional<std::int64_t> tight_i;
    std::optional<std::int64_t> ovoid_m;
};

inline SizeHypothesis classify_size(std::int64_t n, const PolarParams& P) {
    SizeHypothesis h;
    const std::int64_t g = geometric_sum(P.q, P.rank);
    if (n >= 1 && n % g == 0) h.tight_i = n / g;
    if (n >= 1 && n % P.ovoid_number == 0) h.ovoid_m = n / P.ovoid_number;
    return h;
}

// --- quadratic / alternating spaces over a concrete field ---------------------

// A coordinatized space carrying the bilinear form used for perps and (when
// has_q) the quadratic form defining singular points. The symplectic space
// has no quadratic form: every nonzero vector is singular.
struct QuadSpace {
    const Field* field = nullptr;
    int dim = 0;
    int bits = 0;
    bool has_q = true;
    std::string basis;
    std::vector<Fq> gram;   // dim x dim row-major
    std::vector<Fq> qdiag;  // Q(e_i), meaningful when has_q

    Fq gram_at(int i, int j) const {
        return gram[static_cast<std::size_t>(i) * dim + j];
    }

    Fq q_eval(const WCoords& v) const {
        check_config(has_q, "this space carries no quadratic form");
        const Field& F = *field;
        Fq s = F.zero();
        for (int i = 0; i < dim; ++i) {
            if (v[i].v == 0) continue;
            s = F.add(s, F.mul(F.mul(v[i], v[i]), qdiag[i]));
            for (int j = i + 1; j < dim; ++j)
                if (v[j].v != 0) s = F.add(s, F.mul(F.mul(v[i], v[j]), gram_at(i, j)));
        }
        return s;
    }

    Fq b_eval(const WCoords& u, const WCoords& v) const {
        const Field& F = *field;
        Fq s = F.zero();
        for (int i = 0; i < dim; ++i) {
            if (u[i].v == 0) continue;
            Fq row = F.zero();
            for (int j = 0; j < dim; ++j)
                if (v[j].v != 0) row = F.add(row, F.mul(v[j], gram_at(i, j)));
            s = F.add(s, F.mul(u[i], row));
        }
        return s;
    }

    bool is_singular(const WCoords& v) const {
        if (!has_q) return true;
        return q_eval(v).v == 0;
    }
};

namespace detail {

inline void quadspace_check_rank(QuadSpace& qs) {
    MatrixFq g(*qs.field, qs.dim, qs.dim);
    g.a = qs.gram;
    check_internal(matrix_rank(g) == qs.dim, "the bilinear form is degenerate");
}

// Build gram and qdiag from a quadratic form given as monomials
// Q(v) = sum coeff * v_i * v_j (i <= j), by direct polarization.
inline void quadspace_from_monomials(QuadSpace& qs,
                                     const std::vector<std::tuple<int, int, Fq>>& mono) {
    const Field& F = *qs.field;
    qs.qdiag.assign(static_cast<std::size_t>(qs.dim), F.zero());
    qs.gram.assign(static_cast<std::size_t>(qs.dim) * qs.dim, F.zero());
    auto q_of = [&](const WCoords& v) {
        Fq s = F.zero();
        for (const auto& [i, j, c] : mono) s = F.add(s, F.mul(c, F.mul(v[i], v[j])));
        return s;
    };
    for (int i = 0; i < qs.dim; ++i) {
        WCoords ei{};
        ei[i] = F.one();
        qs.qdiag[static_cast<std::size_t>(i)] = q_of(ei);
    }
    for (int i = 0; i < qs.dim; ++i)
        for (int j = 0; j < qs.dim; ++j) {
            if (i == j) {
                const Fq qi = qs.qdiag[static_cast<std::size_t>(i)];
                qs.gram[static_cast<std::size_t>(i) * qs.dim + j] = F.add(qi, qi);
                continue;
            }
            WCoords u{};
            u[i] = F.one();
            u[j] = F.one();
            const Fq qij = q_of(u);
            qs.gram[static_cast<std::size_t>(i) * qs.dim + j] =
                F.sub(F.sub(qij, qs.qdiag[static_cast<std::size_t>(i)]),
                      qs.qdiag[static_cast<std::size_t>(j)]);
        }
}

}  // namespace detail

inline QuadSpace quadspace_from_w(const WSpace& ws) {
    QuadSpace qs;
    qs.field = ws.field;
    qs.dim = ws.dim;
    qs.bits = bits_for_q(ws.field->q());
    check_config(qs.dim * qs.bits <= 64, "space does not fit packed codes");
    qs.has_q = true;
    qs.basis = ws.basis_version;
    qs.gram = ws.gram;
    qs.qdiag = ws.qdiag;
    detail::quadspace_check_rank(qs);
    return qs;
}

// Standard small-space forms (fixed coordinates, used by tests and examples):
//   symplectic  B = sum (x_{2i} y_{2i+1} - x_{2i+1} y_{2i})
//   hyperbolic  Q = sum x_{2i} x_{2i+1}
//   parabolic   Q = x_0^2 + sum x_{2i+1} x_{2i+2}           (odd characteristic)
//   elliptic    Q = sum x_{2i} x_{2i+1} + x^2 + x y + c y^2 on the last pair,
//               with c the least scalar making t^2 + t + c irreducible.
inline QuadSpace quadspace_symplectic(const Field& F, int d) {
    check_config(d >= 2 && d % 2 == 0 && d <= kMaxWDim, "bad symplectic dimension");
    QuadSpace qs;
    qs.field = &F;
    qs.dim = d;
    qs.bits = bits_for_q(F.q());
    check_config(d * qs.bits <= 64, "space does not fit packed codes");
    qs.has_q = false;
    qs.basis = "std-W";
    qs.qdiag.assign(static_cast<std::size_t>(d), F.zero());
    qs.gram.assign(static_cast<std::size_t>(d) * d, F.zero());
    for (int i = 0; i + 1 < d; i += 2) {
        qs.gram[static_cast<std::size_t>(i) * d + (i + 1)] = F.one();
        qs.gram[static_cast<std::size_t>(i + 1) * d + i] = F.neg(F.one());
    }
    detail::quadspace_check_rank(qs);
    return qs;
}

namespace detail {

inline QuadSpace quadspace_quadric(const Field& F, int d, const char* tag,
                                   const std::vector<std::tuple<int, int, Fq>>& mono) {
    QuadSpace qs;
    qs.field = &F;
    qs.dim = d;
    qs.bits = bits_for_q(F.q());
    check_config(d * qs.bits <= 64, "space does not fit packed codes");
    qs.has_q = true;
    qs.basis = tag;
    quadspace_from_monomials(qs, mono);
    quadspace_check_rank(qs);
    return qs;
}

}  // namespace detail

inline QuadSpace quadspace_hyperbolic(const Field& F, int d) {
    check_config(d >= 2 && d % 2 == 0 && d <= kMaxWDim, "bad hyperbolic dimension");
    std::vector<std::tuple<int, int, Fq>> mono;
    for (int i = 0; i + 1 < d; i += 2) mono.emplace_back(i, i + 1, F.one());
    return detail::quadspace_quadric(F, d, "std-Qplus", mono);
}

inline QuadSpace quadspace_parabolic(const Field& F, int d) {
    check_config(d >= 3 && d % 2 == 1 && d <= kMaxWDim, "bad parabolic dimension");
    check_config(F.p() != 2,
                 "the parabolic polarization is degenerate in characteristic 2");
    std::vector<std::tuple<int, int, Fq>> mono;
    mono.emplace_back(0, 0, F.one());
    for (int i = 1; i + 1 < d; i += 2) mono.emplace_back(i, i + 1, F.one());
    return detail::quadspace_quadric(F, d, "std-Q", mono);
}

// Least c with t^2 + t + c irreducible over F.
inline Fq anisotropic_constant(const Field& F) {
    for (int c = 1; c < F.q(); ++c) {
        bool has_root = false;
        for (int t = 0; t < F.q() && !has_root; ++t) {
            const Fq tv = F.elem(t);
            if (F.add(F.add(F.mul(tv, tv), tv), F.elem(c)).v == 0) has_root = true;
        }
        if (!has_root) return F.elem(c);
    }
    check_internal(false, "no anisotropic binary form found");
    return F.zero();
}

inline QuadSpace quadspace_elliptic(const Field& F, int d) {
    check_config(d >= 4 && d % 2 == 0 && d <= kMaxWDim, "bad elliptic dimension");
    const Fq c = anisotropic_constant(F);
    std::vector<std::tuple<int, int, Fq>> mono;
    for (int i = 0; i + 1 < d - 2; i += 2) mono.emplace_back(i, i + 1, F.one());
    mono.emplace_back(d - 2, d - 2, F.one());
    mono.emplace_back(d - 2, d - 1, F.one());
    mono.emplace_back(d - 1, d - 1, c);
    return detail::quadspace_quadric(F, d, "std-Qminus", mono);
}

// --- canonical points ---------------------------------------------------------

inline void canonicalize_coords(const Field& F, WCoords& c, int dim) {
    for (int i = 0; i < dim; ++i) {
        if (c[i].v == 0) continue;
        if (c[i].v != F.one().v) {
            const Fq s = F.inv(c[i]);
            for (int j = i; j < dim; ++j) c[j] = F.mul(s, c[j]);
        }
        return;
    }
    check_config(false, "cannot canonicalize the zero vector");
}

// All singular projective points of a small space, as ascending packed codes.
inline std::vector<std::uint64_t> singular_points(const QuadSpace& qs) {
    const Field& F = *qs.field;
    const std::int64_t total = ipow(F.q(), qs.dim);
    check_config(total <= (std::int64_t{1} << 27),
                 "point enumeration is limited to small spaces");
    std::vector<std::uint64_t> out;
    for (std::int64_t code = 1; code < total; ++code) {
        WCoords c{};
        std::int64_t t = code;
        int first = -1;
        for (int i = 0; i < qs.dim; ++i) {
            c[i] = F.elem(static_cast<int>(t % F.q()));
            t /= F.q();
            if (first < 0 && c[i].v != 0) first = i;
        }
        if (c[first].v != F.one().v) continue;  // one representative per point
        if (!qs.is_singular(c)) continue;
        out.push_back(pack_coords(c, qs.dim, qs.bits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline PointSet pointset_shell(const QuadSpace& qs) {
    PointSet s;
    s.p = qs.field->p();
    s.f = qs.field->f();
    s.dim = qs.dim;
    s.bits = qs.bits;
    s.basis = qs.basis;
    return s;
}

// --- the perp-counting core ----------------------------------------------------

namespace detail {

// Per outer point P: t = gram . P precomputed once; then each member costs one
// inner product mod p. q = 2 reduces to popcount parity on AND; q = 3 uses a
// two-bit SWAR split into value-1 and value-2 lane masks.
struct PerpKernel {
    const QuadSpace* qs = nullptr;
    int dim = 0, bits = 0, q = 0;
    WCoords t{};
    bool fast2 = false, fast3 = false;
    std::uint64_t mask2 = 0;
    std::uint64_t t1 = 0, t2 = 0;
    static constexpr std::uint64_t kLanes = 0x5555555555555555ULL;

    void init(const QuadSpace& space, std::uint64_t pcode) {
        qs = &space;
        const Field& F = *space.field;
        dim = space.dim;
        bits = space.bits;
        q = F.q();
        const WCoords p = unpack_coords(pcode, dim, bits);
        for (int j = 0; j < dim; ++j) {
            Fq s = F.zero();
            for (int i = 0; i < dim; ++i)
                if (p[i].v != 0) s = F.add(s, F.mul(p[i], space.gram_at(i, j)));
            t[j] = s;
        }
        fast2 = (q == 2 && bits == 1);
        fast3 = (q == 3 && bits == 2);
        mask2 = t1 = t2 = 0;
        if (fast2) {
            for (int j = 0; j < dim; ++j)
                if (t[j].v) mask2 |= std::uint64_t{1} << j;
        } else if (fast3) {
            for (int j = 0; j < dim; ++j) {
                if (t[j].v == 1) t1 |= std::uint64_t{1} << (2 * j);
                if (t[j].v == 2) t2 |= std::uint64_t{1} << (2 * j);
            }
        }
    }

    bool orthogonal(std::uint64_t z) const {
        if (fast2) return (std::popcount(mask2 & z) & 1) == 0;
        if (fast3) {
            const std::uint64_t zlo = z & kLanes;
            const std::uint64_t zhi = (z >> 1) & kLanes;
            const int ones = std::popcount((zlo & t1) | (zhi & t2));
            const int twos = std::popcount((zlo & t2) | (zhi & t1));
            return (ones + 2 * twos) % 3 == 0;
        }
        const Field& F = *qs->field;
        Fq s = F.zero();
        const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
        std::uint64_t rest = z;
        for (int j = 0; j < dim; ++j) {
            const auto v = static_cast<std::uint16_t>(rest & mask);
            rest >>= bits;
            if (v) s = F.add(s, F.mul(Fq{v}, t[j]));
        }
        return s.v == 0;
    }
};

inline void check_compatible(const QuadSpace& qs, const PointSet& S) {
    check_config(S.p == qs.field->p() && S.f == qs.field->f() && S.dim == qs.dim &&
                     S.bits == qs.bits && S.basis == qs.basis,
                 "point set and space disagree on field, dimension or basis");
}

}  // namespace detail

// |{z in S : B(P, z) = 0}| for the point with packed code pcode (not
// necessarily a member). Deterministic for every worker count.
inline std::int64_t perp_count(const QuadSpace& qs, const PointSet& S,
                               std::uint64_t pcode, int threads = 1) {
    detail::check_compatible(qs, S);
    detail::PerpKernel k;
    k.init(qs, pcode);
    const std::vector<std::uint64_t>& codes = S.codes;
    return parallel_sum(0, S.count(), threads, [&](std::int64_t b, std::int64_t e) {
        std::int64_t n = 0;
        for (std::int64_t i = b; i < e; ++i)
            n += k.orthogonal(codes[static_cast<std::size_t>(i)]) ? 1 : 0;
        return n;
    });
}

// --- verification -------------------------------------------------------------

enum class VerifyMode { full, member_sample, nonmember_sample };

inline const char* verify_mode_name(VerifyMode m) {
    switch (m) {
        case VerifyMode::full: return "full";
        case VerifyMode::member_sample: return "member-sample";
        case VerifyMode::nonmember_sample: return "nonmember-sample";
    }
    return "?";
}

struct TightReport {
    VerifyMode mode = VerifyMode::full;
    std::int64_t set_size = 0;
    bool size_ok = false;
    std::int64_t expected_h1 = 0, expected_h2 = 0;
    std::int64_t checked = 0;             // member perp scans performed
    std::int64_t nonmembers_checked = 0;  // nonmember perp scans performed
    std::int64_t failures = 0;
    std::map<std::int64_t, std::int64_t> histogram;  // member counts
    std::map<std::int64_t, std::int64_t> nonmember_histogram;
    std::vector<std::pair<std::uint64_t, std::int64_t>> first_failures;  // code, count
    bool pass = false;
    double wall_time = 0.0;
};

namespace detail {

// Rejection-sample a singular point with canonical code outside S.
inline std::uint64_t sample_nonmember(const QuadSpace& qs, const PointSet& S, Rng& rng) {
    const Field& F = *qs.field;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        WCoords c{};
        bool nonzero = false;
        for (int i = 0; i < qs.dim; ++i) {
            c[i] = F.elem(static_cast<int>(rng.below(F.q())));
            nonzero = nonzero || c[i].v != 0;
        }
        if (!nonzero || !qs.is_singular(c)) continue;
        canonicalize_coords(F, c, qs.dim);
        const std::uint64_t code = pack_coords(c, qs.dim, qs.bits);
        if (!S.contains(code)) return code;
    }
    check_config(false, "could not sample a singular nonmember after 10000 tries");
    return 0;
}

}  // namespace detail

// Check the two-value perp property against a target. full mode scans every
// member (the tightness certificate); member_sample / nonmember_sample draw
// seeded random probes. samples > 0 in full mode additionally corroborates
// the nonmember side. Results are bit-identical for every worker count.
inline TightReport verify_tight(const QuadSpace& qs, const PointSet& S,
                                const TightTarget& target, VerifyMode mode,
                                std::int64_t samples, std::uint64_t seed,
                                int threads = 1) {
    detail::check_compatible(qs, S);
    check_config(S.count() > 0, "cannot verify an empty point set");
    const auto start = std::chrono::steady_clock::now();

    TightReport rep;
    rep.mode = mode;
    rep.set_size = S.count();
    rep.size_ok = (S.count() == target.set_size);
    rep.expected_h1 = target.h1;
    rep.expected_h2 = target.h2;

    const std::vector<std::uint64_t>& codes = S.codes;

    if (mode == VerifyMode::full) {
        check_config(S.count() <= 100000,
                     "full verification is quadratic; refusing sets above 10^5 points "
                     "(use member-sample)");
        struct Chunk {
            std::map<std::int64_t, std::int64_t> hist;
            std::vector<std::pair<std::uint64_t, std::int64_t>> bad;
            std::int64_t fails = 0;
        };
        std::vector<Chunk> chunks(static_cast<std::size_t>(
            std::max<std::int64_t>(1, std::min<std::int64_t>(threads, S.count()))));
        parallel_chunks(
            S.count(), threads,
            [&](int w, std::int64_t b, std::int64_t e) {
                Chunk& out = chunks[static_cast<std::size_t>(w)];
                detail::PerpKernel k;
                for (std::int64_t idx = b; idx < e; ++idx) {
                    k.init(qs, codes[static_cast<std::size_t>(idx)]);
                    std::int64_t n = 0;
                    for (std::uint64_t z : codes) n += k.orthogonal(z) ? 1 : 0;
                    ++out.hist[n];
                    if (n != target.h1) {
                        ++out.fails;
                        if (out.bad.size() < 8)
                            out.bad.emplace_back(codes[static_cast<std::size_t>(idx)], n);
                    }
                }
            },
            [&](int w) {
                const Chunk& c = chunks[static_cast<std::size_t>(w)];
                for (const auto& [k2, v] : c.hist) rep.histogram[k2] += v;
                rep.failures += c.fails;
                for (const auto& b : c.bad)
                    if (rep.first_failures.size() < 8) rep.first_failures.push_back(b);
            });
        rep.checked = S.count();
    } else {
        check_config(samples >= 1, "sample modes need a positive sample count");
        Rng rng(seed);
        const bool member = (mode == VerifyMode::member_sample);
        const std::int64_t want = member ? target.h1 : target.h2;
        for (std::int64_t s = 0; s < samples; ++s) {
            const std::uint64_t pcode =
                member ? codes[static_cast<std::size_t>(rng.below(
                             static_cast<std::uint64_t>(S.count())))]
                       : detail::sample_nonmember(qs, S, rng);
            const std::int64_t n = perp_count(qs, S, pcode, threads);
            ++(member ? rep.histogram : rep.nonmember_histogram)[n];
            if (n != want) {
                ++rep.failures;
                if (rep.first_failures.size() < 8) rep.first_failures.emplace_back(pcode, n);
            }
        }
        (member ? rep.checked : rep.nonmembers_checked) = samples;
    }

    // Optional nonmember corroboration on top of a full member scan.
    if (mode == VerifyMode::full && samples > 0) {
        Rng rng(seed);
        for (std::int64_t s = 0; s < samples; ++s) {
            const std::uint64_t pcode = detail::sample_nonmember(qs, S, rng);
            const std::int64_t n = perp_count(qs, S, pcode, threads);
            ++rep.nonmember_histogram[n];
            if (n != target.h2) {
                ++rep.failures;
                if (rep.first_failures.size() < 8) rep.first_failures.emplace_back(pcode, n);
            }
        }
        rep.nonmembers_checked = samples;
    }

    const bool member_spike =
        rep.histogram.empty() ||
        (rep.histogram.size() == 1 && rep.histogram.begin()->first == target.h1);
    const bool nonmember_spike =
        rep.nonmember_histogram.empty() ||
        (rep.nonmember_histogram.size() == 1 &&
         rep.nonmember_histogram.begin()->first == target.h2);
    rep.pass = rep.size_ok && rep.failures == 0 && member_spike && nonmember_spike;
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// --- the full singular census at q = 2 ----------------------------------------

namespace detail {

// Count singular projective points of a q = 2 quadratic space by scanning all
// nonzero vectors with a packed evaluation:
// Q(v) = XOR over set bits i of (qdiag_i XOR parity(row_above_i AND v)).
inline std::int64_t census_bits_q2(const QuadSpace& qs, int threads) {
    check_config(qs.field->q() == 2 && qs.has_q && qs.dim <= 62,
                 "bit census needs a quadratic form over the binary field");
    const int dim = qs.dim;
    std::vector<std::uint64_t> row_above(static_cast<std::size_t>(dim), 0);
    std::vector<std::uint64_t> qd(static_cast<std::size_t>(dim), 0);
    for (int i = 0; i < dim; ++i) {
        qd[static_cast<std::size_t>(i)] = qs.qdiag[static_cast<std::size_t>(i)].v;
        for (int j = i + 1; j < dim; ++j)
            if (qs.gram_at(i, j).v)
                row_above[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
    const std::int64_t total = std::int64_t{1} << dim;
    return parallel_sum(1, total, threads, [&](std::int64_t b, std::int64_t e) {
        std::int64_t n = 0;
        for (std::int64_t v = b; v < e; ++v) {
            const auto uv = static_cast<std::uint64_t>(v);
            std::uint64_t acc = 0;
            std::uint64_t m = uv;
            while (m) {
                const int i = std::countr_zero(m);
                m &= m - 1;
                acc ^= qd[static_cast<std::size_t>(i)] ^
                       (std::popcount(row_above[static_cast<std::size_t>(i)] & uv) & 1U);
            }
            n += (acc == 0) ? 1 : 0;
        }
        return n;
    });
}

}  // namespace detail

// Exhaustive singular-point count of the 26-dimensional q = 2 space; checked
// on the spot against the elliptic parameter formula, so a passing return
// value simultaneously certifies the form type.
inline std::int64_t singular_census(const WSpace& ws, int threads = 1) {
    check_config(ws.field->q() == 2,
                 "the full singular census enumerates 2^26 vectors; q = 2 only");
    const QuadSpace qs = quadspace_from_w(ws);
    const std::int64_t n = detail::census_bits_q2(qs, threads);
    const PolarParams P = polar_params(PolarFamily::elliptic, qs.dim, 2, 1);
    check_internal(n == P.point_count,
                   "census disagrees with the elliptic point-count formula");
    return n;
}

// --- generators and set algebra -------------------------------------------------

namespace detail {

inline std::vector<std::uint64_t> span_points(const QuadSpace& qs,
                                              const std::vector<WCoords>& basis) {
    const Field& F = *qs.field;
    const int r = static_cast<int>(basis.size());
    std::vector<std::uint64_t> pts;
    const std::int64_t n = ipow(F.q(), r);
    for (std::int64_t idx = 1; idx < n; ++idx) {
        WCoords v{};
        std::int64_t t = idx;
        for (int i = 0; i < r; ++i) {
            const Fq c = F.elem(static_cast<int>(t % F.q()));
            t /= F.q();
            if (c.v == 0) continue;
            for (int j = 0; j < qs.dim; ++j) v[j] = F.add(v[j], F.mul(c, basis[static_cast<std::size_t>(i)][j]));
        }
        canonicalize_coords(F, v, qs.dim);
        pts.push_back(pack_coords(v, qs.dim, qs.bits));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

inline bool generator_search(const QuadSpace& qs,
                             const std::vector<std::uint64_t>& pts, int rank,
                             const PointSet* avoid, std::vector<WCoords>& chosen,
                             std::size_t from) {
    const Field& F = *qs.field;
    if (static_cast<int>(chosen.size()) == rank) {
        if (avoid) {
            for (std::uint64_t code : span_points(qs, chosen))
                if (avoid->contains(code)) return false;
        }
        return true;
    }
    for (std::size_t at = from; at < pts.size(); ++at) {
        const WCoords c = unpack_coords(pts[at], qs.dim, qs.bits);
        bool ok = true;
        for (const WCoords& u : chosen)
            if (qs.b_eval(u, c).v != 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        // Linear independence from the chosen span.
        std::vector<std::vector<Fq>> gens;
        for (const WCoords& u : chosen)
            gens.emplace_back(u.begin(), u.begin() + qs.dim);
        gens.emplace_back(c.begin(), c.begin() + qs.dim);
        if (make_subspace(F, qs.dim, gens).dim() != static_cast<int>(gens.size()))
            continue;
        chosen.push_back(c);
        if (generator_search(qs, pts, rank, avoid, chosen, at + 1)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace detail

// A maximal totally singular subspace of the given rank, as its point set.
// Greedy extension with backtracking over the canonical singular-point list;
// `avoid` (optional) demands the generator be disjoint from that set.
inline PointSet find_generator(const QuadSpace& qs, int rank,
                               const PointSet* avoid = nullptr) {
    check_config(rank >= 1, "rank must be positive");
    const std::vector<std::uint64_t> pts = singular_points(qs);
    check_config(static_cast<std::int64_t>(pts.size()) <= 1000000,
                 "generator search is limited to small spaces");
    std::vector<WCoords> chosen;
    const bool found = detail::generator_search(qs, pts, rank, avoid, chosen, 0);
    check_config(found, "no generator of the requested rank exists under the constraints");
    PointSet out = pointset_shell(qs);
    out.codes = detail::span_points(qs, chosen);
    check_internal(out.count() == geometric_sum(qs.field->q(), rank),
                   "generator has the wrong point count");
    for (std::uint64_t code : out.codes) {
        const WCoords c = unpack_coords(code, qs.dim, qs.bits);
        check_internal(qs.is_singular(c), "generator contains a non-singular point");
    }
    return out;
}

inline void check_same_shell(const PointSet& a, const PointSet& b) {
    check_config(a.p == b.p && a.f == b.f && a.dim == b.dim && a.bits == b.bits &&
                     a.basis == b.basis,
                 "point sets disagree on field, dimension or basis");
}

// Union of disjoint sets (tight parameters add).
inline PointSet combine_union(const PointSet& a, const PointSet& b) {
    check_same_shell(a, b);
    std::vector<std::uint64_t> meet;
    std::set_intersection(a.codes.begin(), a.codes.end(), b.codes.begin(),
                          b.codes.end(), std::back_inserter(meet));
    check_config(meet.empty(), "union requires disjoint point sets");
    PointSet out = a;
    out.codes.clear();
    std::set_union(a.codes.begin(), a.codes.end(), b.codes.begin(), b.codes.end(),
                   std::back_inserter(out.codes));
    return out;
}

// b minus a, requiring a to be contained in b (tight parameters subtract).
inline PointSet combine_difference(const PointSet& a, const PointSet& b) {
    check_same_shell(a, b);
    check_config(std::includes(b.codes.begin(), b.codes.end(), a.codes.begin(),
                               a.codes.end()),
                 "difference requires the first set to be contained in the second");
    PointSet out = a;
    out.codes.clear();
    std::set_difference(b.codes.begin(), b.codes.end(), a.codes.begin(),
                        a.codes.end(), std::back_inserter(out.codes));
    return out;
}

}  // namespace tightset
