#include <catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "tightset/galois.hpp"

using tightset::Field;
using tightset::Fq;

namespace {

// Independent irreducibility oracle: a monic polynomial of degree <= 3 over
// F_p is irreducible iff it has no root; degree 4 additionally needs no
// monic quadratic factor. Coefficients are plain ints, constant first.
int poly_eval_mod(const std::vector<int>& c, int x, int p) {
    int r = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = (r * x + c[i]) % p;
    return r;
}

bool oracle_irreducible(const std::vector<int>& m, int p) {
    const int deg = static_cast<int>(m.size()) - 1;
    for (int x = 0; x < p; ++x)
        if (poly_eval_mod(m, x, p) == 0) return false;
    if (deg <= 3) return true;
    REQUIRE(deg == 4);
    // quadratic * quadratic split: (t^2+at+b)(t^2+ct+d)
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d) {
                    if ((b * d) % p != m[0]) continue;
                    if ((b * c + a * d) % p != m[1]) continue;
                    if ((b + d + a * c) % p != m[2]) continue;
                    if ((a + c) % p != m[3]) continue;
                    return false;
                }
    return true;
}

}  // namespace

TEST_CASE("modulus is the lexicographically smallest irreducible monic polynomial",
          "[galois]") {
    SECTION("frozen small cases") {
        CHECK(Field(2, 1).modulus() == std::vector<int>{0, 1});          // t
        CHECK(Field(2, 2).modulus() == std::vector<int>{1, 1, 1});       // t^2+t+1
        CHECK(Field(2, 3).modulus() == std::vector<int>{1, 0, 1, 1});    // t^3+t^2+1
        CHECK(Field(3, 2).modulus() == std::vector<int>{1, 0, 1});       // t^2+1
        CHECK(Field(5, 2).modulus() == std::vector<int>{1, 1, 1});       // t^2+t+1
    }
    SECTION("lex minimality against the brute-force oracle") {
        for (auto [p, f] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
            Field F(p, f);
            const auto& chosen = F.modulus();
            REQUIRE(oracle_irreducible(chosen, p));
            // No irreducible monic polynomial compares smaller constant-first.
            std::int64_t total = 1;
            for (int i = 0; i < f; ++i) total *= p;
            bool found_smaller = false;
            for (std::int64_t n = 0; n < total && !found_smaller; ++n) {
                std::vector<int> m(f + 1, 0);
                std::int64_t rem = n;
                for (int i = f - 1; i >= 0; --i) {
                    m[i] = static_cast<int>(rem % p);
                    rem /= p;
                }
                m[f] = 1;
                if (std::vector<int>(m.begin(), m.end() - 1) >=
                    std::vector<int>(chosen.begin(), chosen.end() - 1))
                    continue;
                if (oracle_irreducible(m, p)) found_smaller = true;
            }
            CHECK_FALSE(found_smaller);
        }
    }
}

TEST_CASE("field axioms hold exhaustively for q <= 16", "[galois]") {
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1},
                        {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}}) {
        Field F(p, f);
        const int q = F.q();
        INFO("q = " << q);
        for (int a = 0; a < q; ++a) {
            Fq x = F.elem(a);
            CHECK(F.add(x, F.zero()) == x);
            CHECK(F.mul(x, F.one()) == x);
            CHECK(F.add(x, F.neg(x)) == F.zero());
            if (a != 0) {
                CHECK(F.mul(x, F.inv(x)) == F.one());
                CHECK(F.pow(x, q - 1) == F.one());
            }
            for (int b = 0; b < q; ++b) {
                Fq y = F.elem(b);
                CHECK(F.add(x, y) == F.add(y, x));
                CHECK(F.mul(x, y) == F.mul(y, x));
                for (int c = 0; c < q; ++c) {
                    Fq z = F.elem(c);
                    CHECK(F.add(F.add(x, y), z) == F.add(x, F.add(y, z)));
                    CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
                    CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
                }
            }
        }
    }
}

TEST_CASE("squares: (q-1)/2 nonsquares for odd q, everything square for even q",
          "[galois]") {
    for (auto [p, f] : {std::pair{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {13, 1}}) {
        Field F(p, f);
        int nonsquares = 0;
        for (int a = 0; a < F.q(); ++a)
            if (!F.is_square(F.elem(a))) ++nonsquares;
        CHECK(nonsquares == (F.q() - 1) / 2);
        CHECK(F.is_square(F.zero()));
        CHECK_FALSE(F.is_square(F.first_nonsquare()));
        // Nonsquare closure: nonsquare * nonsquare is a square.
        Fq ns = F.first_nonsquare();
        for (int a = 1; a < F.q(); ++a) {
            Fq x = F.elem(a);
            bool xs = F.is_square(x);
            CHECK(F.is_square(F.mul(ns, x)) == !xs);
        }
    }
    for (auto [p, f] : {std::pair{2, 1}, {2, 2}, {2, 3}, {2, 4}}) {
        Field F(p, f);
        for (int a = 0; a < F.q(); ++a) CHECK(F.is_square(F.elem(a)));
    }
}

TEST_CASE("absolute trace", "[galois]") {
    SECTION("F_4 sends the generator to 1") {
        Field F(2, 2);
        // code 2 is t, a root of t^2+t+1
        CHECK(F.absolute_trace(F.elem(2)) == 1);
        CHECK(F.absolute_trace(F.elem(3)) == 1);
        CHECK(F.absolute_trace(F.zero()) == 0);
        CHECK(F.absolute_trace(F.one()) == 0);
    }
    SECTION("additivity and kernel size q/p") {
        for (auto [p, f] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}}) {
            Field F(p, f);
            int kernel = 0;
            for (int a = 0; a < F.q(); ++a) {
                if (F.absolute_trace(F.elem(a)) == 0) ++kernel;
                for (int b = 0; b < F.q(); ++b) {
                    int lhs = F.absolute_trace(F.add(F.elem(a), F.elem(b)));
                    int rhs = (F.absolute_trace(F.elem(a)) +
                               F.absolute_trace(F.elem(b))) % p;
                    CHECK(lhs == rhs);
                }
            }
            CHECK(kernel == F.q() / p);
        }
    }
}

TEST_CASE("frobenius is a field automorphism fixing the prime subfield", "[galois]") {
    for (auto [p, f] : {std::pair{2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        Field F(p, f);
        for (int a = 0; a < F.q(); ++a) {
            Fq x = F.elem(a);
            CHECK(F.frobenius(x) == F.pow(x, p));
            for (int b = 0; b < F.q(); ++b) {
                Fq y = F.elem(b);
                CHECK(F.frobenius(F.add(x, y)) == F.add(F.frobenius(x), F.frobenius(y)));
                CHECK(F.frobenius(F.mul(x, y)) == F.mul(F.frobenius(x), F.frobenius(y)));
            }
        }
        for (int c = 0; c < p; ++c) CHECK(F.frobenius(F.elem(c)) == F.elem(c));
    }
}

TEST_CASE("scalar embedding reduces mod p", "[galois]") {
    Field F(3, 2);
    CHECK(F.scalar(0) == F.zero());
    CHECK(F.scalar(1) == F.one());
    CHECK(F.scalar(3) == F.zero());
    CHECK(F.scalar(-1) == F.neg(F.one()));
    CHECK(F.scalar(-4) == F.neg(F.one()));
    CHECK(F.add(F.scalar(2), F.scalar(2)) == F.scalar(4));
}

TEST_CASE("on-the-fly arithmetic above the table cap", "[galois]") {
    SECTION("prime field F_257") {
        Field F(257, 1);
        CHECK(F.q() == 257);
        for (int a : {1, 2, 100, 255, 256}) {
            Fq x = F.elem(a);
            CHECK(F.mul(x, F.inv(x)) == F.one());
            CHECK(F.add(x, F.neg(x)) == F.zero());
        }
        CHECK(F.mul(F.elem(16), F.elem(16)) == F.elem(256));
        CHECK(F.mul(F.elem(256), F.elem(256)) == F.elem(1));  // (-1)^2
    }
    SECTION("F_512 spot checks against the subfield") {
        Field F(2, 9);
        CHECK(F.q() == 512);
        // prime subfield behaves
        CHECK(F.add(F.one(), F.one()) == F.zero());
        // sample associativity / distributivity
        for (int a : {3, 17, 255, 511})
            for (int b : {5, 64, 300})
                for (int c : {1, 2, 499}) {
                    Fq x = F.elem(a), y = F.elem(b), z = F.elem(c);
                    CHECK(F.mul(F.mul(x, y), z) == F.mul(x, F.mul(y, z)));
                    CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
                }
        for (int a : {1, 7, 200, 511}) {
            Fq x = F.elem(a);
            CHECK(F.mul(x, F.inv(x)) == F.one());
            CHECK(F.pow(x, 511) == F.one());
        }
        CHECK(F.absolute_trace(F.zero()) == 0);
    }
}

TEST_CASE("construction and range preconditions", "[galois]") {
    CHECK_THROWS_AS(Field(4, 1), tightset::config_error);
    CHECK_THROWS_AS(Field(1, 1), tightset::config_error);
    CHECK_THROWS_AS(Field(2, 0), tightset::config_error);
    CHECK_THROWS_AS(Field(2, 17), tightset::config_error);
    Field F(2, 2);
    CHECK_THROWS_AS(F.elem(4), tightset::config_error);
    CHECK_THROWS_AS(F.elem(-1), tightset::config_error);
    CHECK_THROWS_AS(F.inv(F.zero()), tightset::config_error);
}
