#include <catch_amalgamated.hpp>

#include <vector>

#include "tightset/octonion.hpp"
#include "tightset/rng.hpp"

using namespace tightset;

namespace {

Octonion random_oct(const Field& F, Rng& rng) {
    Octonion r = oct_zero(F);
    for (auto& x : r.c) x = F.elem(static_cast<int>(rng.below(F.q())));
    return r;
}

SubspaceBasis span_of_basis_vectors(const Field& F, std::initializer_list<int> idx) {
    std::vector<std::vector<Fq>> gens;
    for (int i : idx) {
        std::vector<Fq> v(8, F.zero());
        v[i] = F.one();
        gens.push_back(v);
    }
    return make_subspace(F, 8, gens);
}

}  // namespace

TEST_CASE("structure table self-check and frozen products", "[octonion]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, f);
        REQUIRE_NOTHROW(oct_self_check(F));
    }
    Field F(7, 1);
    // A couple of literal table rows, read back through oct_mul.
    auto prod = [&](int i, int j) { return oct_mul(oct_basis(F, i), oct_basis(F, j)); };
    CHECK(prod(0, 4).c == oct_basis(F, 0).c);                 // x1 x5 = x1
    CHECK(prod(1, 2).c == oct_neg(oct_basis(F, 0)).c);        // x2 x3 = -x1
    CHECK(prod(7, 0).c == oct_neg(oct_basis(F, 4)).c);        // x8 x1 = -x5
    CHECK(oct_is_zero(prod(0, 0)));                           // x1 x1 = 0
    CHECK(oct_is_zero(prod(3, 4)));                           // x4 x5 = 0
    SECTION("cross-product cells come in antisymmetric pairs") {
        CHECK(prod(2, 7).c == oct_neg(oct_basis(F, 6)).c);    // x3 x8 = -x7
        CHECK(prod(7, 2).c == oct_basis(F, 6).c);             // x8 x3 =  x7
        // hence (x3 + x8)^2 = 0, as the quadratic relation demands
        Octonion s = oct_add(oct_basis(F, 2), oct_basis(F, 7));
        CHECK(oct_is_zero(oct_mul(s, s)));
    }
    SECTION("a non-associative witness") {
        Octonion lhs = oct_mul(oct_mul(oct_basis(F, 0), oct_basis(F, 5)), oct_basis(F, 6));
        Octonion rhs = oct_mul(oct_basis(F, 0), oct_mul(oct_basis(F, 5), oct_basis(F, 6)));
        CHECK(lhs.c == oct_neg(oct_basis(F, 4)).c);  // (x1 x6) x7 = -x5
        CHECK(rhs.c == oct_neg(oct_basis(F, 3)).c);  // x1 (x6 x7) = -x4
        CHECK(lhs.c != rhs.c);
    }
}

TEST_CASE("norm composition, quadratic relation, alternativity", "[octonion]") {
    Rng rng(9001);
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field F(p, f);
        const Octonion one = oct_identity(F);
        CHECK(oct_norm(one) == F.one());
        CHECK(oct_trace(one) == F.scalar(2));
        for (int trial = 0; trial < 2500; ++trial) {
            Octonion x = random_oct(F, rng), y = random_oct(F, rng);
            // composition: N(xy) = N(x) N(y)
            CHECK(oct_norm(oct_mul(x, y)) == F.mul(oct_norm(x), oct_norm(y)));
            // quadratic relation: x^2 - Tr(x) x + N(x) 1 = 0
            Octonion rel = oct_add(
                oct_sub(oct_mul(x, x), oct_scale(oct_trace(x), x)),
                oct_scale(oct_norm(x), one));
            CHECK(oct_is_zero(rel));
            // alternative laws
            CHECK(oct_mul(x, oct_mul(x, y)).c == oct_mul(oct_mul(x, x), y).c);
            CHECK(oct_mul(oct_mul(y, x), x).c == oct_mul(y, oct_mul(x, x)).c);
            // conjugation: x conj(x) = N(x) 1, conj(xy) = conj(y) conj(x)
            CHECK(oct_mul(x, oct_conj(x)).c == oct_scale(oct_norm(x), one).c);
            CHECK(oct_conj(oct_mul(x, y)).c == oct_mul(oct_conj(y), oct_conj(x)).c);
            CHECK(oct_conj(oct_conj(x)).c == x.c);
            // kernel-of-norm trick used throughout: x (conj(x) y) = N(x) y
            CHECK(oct_mul(x, oct_mul(oct_conj(x), y)).c == oct_scale(oct_norm(x), y).c);
            // trace symmetry
            CHECK(oct_trace(oct_mul(x, y)) == oct_trace(oct_mul(y, x)));
        }
    }
}

TEST_CASE("bilinear form: two routes agree, frozen values", "[octonion]") {
    Rng rng(9002);
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
        Field F(p, f);
        for (int trial = 0; trial < 1000; ++trial) {
            Octonion x = random_oct(F, rng), y = random_oct(F, rng);
            Fq via_norm = F.sub(F.sub(oct_norm(oct_add(x, y)), oct_norm(x)), oct_norm(y));
            CHECK(oct_bilinear(x, y) == via_norm);
            CHECK(oct_bilinear(x, y) == oct_bilinear(y, x));
        }
    }
    Field F(3, 1);
    // B pairs the basis hyperbolically: B(x_i, x_{9-i}) = 1, all else 0.
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Fq expected = (j == 7 - i) ? F.one() : F.zero();
            CHECK(oct_bilinear(oct_basis(F, i), oct_basis(F, j)) == expected);
        }
    // In particular B(x1, x8) = +1, agreeing with Tr(x1 * conj(x8)) = Tr(x4).
    CHECK(oct_bilinear(oct_basis(F, 0), oct_basis(F, 7)) == F.one());
}

TEST_CASE("annihilators of the reference elements", "[octonion]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {5, 1}}) {
        Field F(p, f);
        const Octonion x1 = oct_basis(F, 0), x4 = oct_basis(F, 3);
        CHECK(ann_left(x1) == span_of_basis_vectors(F, {0, 1, 2, 4}));   // x1,x2,x3,x5
        CHECK(ann_right(x1) == span_of_basis_vectors(F, {0, 1, 2, 3}));  // x1,x2,x3,x4
        CHECK(ann_left(x4) == span_of_basis_vectors(F, {0, 4, 5, 6}));   // x1,x5,x6,x7
        CHECK(ann_right(x4) == span_of_basis_vectors(F, {1, 2, 4, 7}));  // x2,x3,x5,x8
    }
}

TEST_CASE("annihilator dimensions across the whole algebra at q = 2", "[octonion]") {
    Field F(2, 1);
    const Octonion one = oct_identity(F);
    int singular_nonzero = 0;
    for (std::uint32_t code = 1; code < 256; ++code) {
        Octonion a = oct_from_code(F, code);
        SubspaceBasis al = ann_left(a), ar = ann_right(a);
        if (oct_norm(a).v == 0) {
            ++singular_nonzero;
            CHECK(al.dim() == 4);
            CHECK(ar.dim() == 4);
            // Membership sanity: every kernel vector really annihilates.
            for (const auto& row : al.rows) {
                Octonion v{&F, {}};
                for (int i = 0; i < 8; ++i) v.c[i] = row[i];
                CHECK(oct_is_zero(oct_mul(v, a)));
            }
            int expected = oct_bilinear(a, one).v == 0 ? 3 : 1;
            CHECK(subspace_intersect(al, ar).dim() == expected);
        } else {
            CHECK(al.dim() == 0);
            CHECK(ar.dim() == 0);
        }
    }
    CHECK(singular_nonzero == 135);  // q^4 + q^7 - q^3 - 1 at q = 2
}

TEST_CASE("annihilator dimensions sampled at q = 3 and q = 4", "[octonion]") {
    Rng rng(9003);
    for (auto [p, f] : {std::pair{3, 1}, {2, 2}}) {
        Field F(p, f);
        const Octonion one = oct_identity(F);
        int seen_singular = 0;
        while (seen_singular < 60) {
            Octonion a = random_oct(F, rng);
            if (oct_is_zero(a)) continue;
            if (oct_norm(a).v != 0) {
                CHECK(ann_left(a).dim() == 0);
                continue;
            }
            ++seen_singular;
            SubspaceBasis al = ann_left(a), ar = ann_right(a);
            CHECK(al.dim() == 4);
            CHECK(ar.dim() == 4);
            int expected = oct_bilinear(a, one).v == 0 ? 3 : 1;
            CHECK(subspace_intersect(al, ar).dim() == expected);
        }
    }
}

TEST_CASE("zero-product pairs have 3-dimensional mixed annihilator meets",
          "[octonion]") {
    // For nonzero singular a and nonzero b in ann_right(a) (so a b = 0):
    // dim(ann_left(a) meet ann_right(b)) = 3. Exhaustive at q = 2.
    Field F(2, 1);
    int pairs = 0;
    for (std::uint32_t code = 1; code < 256; ++code) {
        Octonion a = oct_from_code(F, code);
        if (oct_norm(a).v != 0) continue;
        SubspaceBasis al = ann_left(a);
        SubspaceBasis ar = ann_right(a);
        // enumerate nonzero b in ann_right(a)
        for (std::uint32_t mask = 1; mask < 16; ++mask) {
            Octonion b = oct_zero(F);
            for (int i = 0; i < 4; ++i)
                if (mask & (1u << i)) {
                    Octonion g{&F, {}};
                    for (int j = 0; j < 8; ++j) g.c[j] = ar.rows[i][j];
                    b = oct_add(b, g);
                }
            REQUIRE(oct_is_zero(oct_mul(a, b)));
            REQUIRE(oct_norm(b).v == 0);  // annihilator vectors are singular
            CHECK(subspace_intersect(al, ann_right(b)).dim() == 3);
            ++pairs;
        }
    }
    CHECK(pairs == 135 * 15);
}

TEST_CASE("octonion code round trip and mixed-field detection", "[octonion]") {
    Field F(3, 1);
    for (std::uint32_t code : {0u, 1u, 6560u, 3280u, 999u}) {
        CHECK(oct_code(oct_from_code(F, code)) == code);
    }
    Field F2(2, 1);
    CHECK_THROWS_AS(oct_mul(oct_basis(F, 0), oct_basis(F2, 0)), config_error);
    CHECK_THROWS_AS(oct_add(oct_basis(F, 0), oct_basis(F2, 0)), config_error);
}
