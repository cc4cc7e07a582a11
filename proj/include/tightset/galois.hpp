#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tightset/common.hpp"

// Explicit finite-field arithmetic F_q, q = p^f.
//
// Elements are polynomials over F_p of degree < f, reduced modulo a fixed
// irreducible monic modulus; the code of an element is its base-p digit
// packing (constant coefficient = least significant digit). The modulus is
// the lexicographically smallest irreducible monic polynomial of degree f,
// comparing coefficient vectors constant-first, and is re-verified
// irreducible by trial factor search at construction. For q <= 256 all
// operations are table-driven; larger fields (up to the 2^16 cap) compute
// on the fly.
//
// Higher modules treat Fq as opaque: all arithmetic goes through Field.

namespace tightset {

struct Fq {
    std::uint16_t v = 0;
    friend bool operator==(Fq, Fq) = default;
    friend std::strong_ordering operator<=>(Fq, Fq) = default;
};

class Field {
public:
    Field(int p, int f) : p_(p), f_(f) {
        check_config(f >= 1, "field degree must be >= 1");
        check_config(is_prime(p), "field characteristic must be prime");
        std::int64_t q = 1;
        for (int i = 0; i < f; ++i) {
            q *= p;
            check_config(q <= 65536, "field size exceeds the 2^16 cap");
        }
        q_ = static_cast<int>(q);
        pick_modulus();
        if (q_ <= kTableCap) build_tables();
        build_trace_frobenius();
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    int p() const { return p_; }
    int f() const { return f_; }
    int q() const { return q_; }

    // Monic modulus, coefficient i of t^i; size f+1, leading coefficient 1.
    const std::vector<int>& modulus() const { return modulus_; }

    Fq zero() const { return Fq{0}; }
    Fq one() const { return Fq{1}; }

    Fq elem(std::int64_t code) const {
        check_config(code >= 0 && code < q_, "element code out of range");
        return Fq{static_cast<std::uint16_t>(code)};
    }

    // n * 1, the prime-subfield embedding of an integer.
    Fq scalar(std::int64_t n) const {
        std::int64_t r = n % p_;
        if (r < 0) r += p_;
        return Fq{static_cast<std::uint16_t>(r)};
    }

    Fq add(Fq a, Fq b) const {
        if (!add_.empty()) return Fq{add_[idx(a, b)]};
        return add_slow(a, b);
    }

    Fq neg(Fq a) const {
        if (!neg_.empty()) return Fq{neg_[a.v]};
        return neg_slow(a);
    }

    Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }

    Fq mul(Fq a, Fq b) const {
        if (!mul_.empty()) return Fq{mul_[idx(a, b)]};
        return mul_slow(a, b);
    }

    Fq inv(Fq a) const {
        check_config(a.v != 0, "inverse of zero");
        if (!inv_.empty()) return Fq{inv_[a.v]};
        return pow(a, q_ - 2);
    }

    Fq pow(Fq a, std::int64_t e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        Fq r = one(), base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Fq frobenius(Fq a) const {
        if (!frob_.empty()) return Fq{frob_[a.v]};
        return pow(a, p_);
    }

    // Squares include 0; for even q every element is a square.
    bool is_square(Fq a) const {
        if (p_ == 2) return true;
        if (!square_.empty()) return square_[a.v] != 0;
        return a.v == 0 || pow(a, (q_ - 1) / 2) == one();
    }

    // a + a^p + ... + a^(p^(f-1)), an element of the prime subfield,
    // returned as its integer value in [0, p).
    int absolute_trace(Fq a) const {
        if (!trace_.empty()) return trace_[a.v];
        Fq acc = zero(), t = a;
        for (int i = 0; i < f_; ++i) {
            acc = add(acc, t);
            t = frobenius(t);
        }
        check_internal(acc.v < static_cast<unsigned>(p_),
                       "absolute trace left the prime subfield");
        return acc.v;
    }

    Fq first_nonsquare() const {
        check_config(p_ != 2, "nonsquares require odd q");
        for (int c = 1; c < q_; ++c)
            if (!is_square(Fq{static_cast<std::uint16_t>(c)})) return elem(c);
        throw internal_error("odd field without a nonsquare");
    }

private:
    static constexpr int kTableCap = 256;

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; static_cast<std::int64_t>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::size_t idx(Fq a, Fq b) const {
        return static_cast<std::size_t>(a.v) * q_ + b.v;
    }

    // --- polynomial arithmetic over F_p (codes <-> digit vectors) ---

    std::vector<int> decode(std::uint32_t code, int len) const {
        std::vector<int> d(len, 0);
        for (int i = 0; i < len && code; ++i) {
            d[i] = static_cast<int>(code % p_);
            code /= p_;
        }
        return d;
    }

    std::uint16_t encode(const std::vector<int>& d) const {
        std::uint32_t code = 0;
        for (int i = f_ - 1; i >= 0; --i)
            code = code * p_ + static_cast<std::uint32_t>(i < static_cast<int>(d.size()) ? d[i] : 0);
        return static_cast<std::uint16_t>(code);
    }

    // Remainder of a modulo monic m, in place. Degrees are tracked loosely;
    // all coefficients stay reduced mod p.
    void poly_mod(std::vector<int>& a, const std::vector<int>& m) const {
        const int dm = static_cast<int>(m.size()) - 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
            const int c = a[i];
            if (c == 0) continue;
            a[i] = 0;
            for (int j = 0; j < dm; ++j)
                a[i - dm + j] = (a[i - dm + j] + (p_ - c) * m[j]) % p_;
        }
        a.resize(dm);
    }

    std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
        }
        return r;
    }

    bool poly_divides(const std::vector<int>& d, std::vector<int> a) const {
        poly_mod(a, d);
        for (int c : a)
            if (c != 0) return false;
        return true;
    }

    bool is_irreducible(const std::vector<int>& m) const {
        const int deg = static_cast<int>(m.size()) - 1;
        if (deg == 1) return true;
        // Trial division by every monic polynomial of degree 1..deg/2.
        for (int dd = 1; dd <= deg / 2; ++dd) {
            std::int64_t count = 1;
            for (int i = 0; i < dd; ++i) count *= p_;
            for (std::int64_t c = 0; c < count; ++c) {
                std::vector<int> div = decode(static_cast<std::uint32_t>(c), dd);
                div.push_back(1);  // monic
                if (poly_divides(div, m)) return false;
            }
        }
        return true;
    }

    void pick_modulus() {
        // Enumerate coefficient vectors (c0, ..., c_{f-1}) in lexicographic
        // order with the constant coefficient compared first.
        std::int64_t count = 1;
        for (int i = 0; i < f_; ++i) count *= p_;
        for (std::int64_t n = 0; n < count; ++n) {
            std::vector<int> m(f_ + 1, 0);
            std::int64_t rem = n;
            for (int i = f_ - 1; i >= 0; --i) {
                m[i] = static_cast<int>(rem % p_);
                rem /= p_;
            }
            // rem exhausted; digits were filled most-significant-compare
            // first: m[0] got the highest place of n.
            m[f_] = 1;
            if (is_irreducible(m)) {
                modulus_ = m;
                return;
            }
        }
        throw internal_error("no irreducible modulus found");
    }

    Fq add_slow(Fq a, Fq b) const {
        std::uint32_t x = a.v, y = b.v, out = 0, place = 1;
        for (int i = 0; i < f_; ++i) {
            out += place * ((x % p_ + y % p_) % p_);
            x /= p_;
            y /= p_;
            place *= p_;
        }
        return Fq{static_cast<std::uint16_t>(out)};
    }

    Fq neg_slow(Fq a) const {
        std::uint32_t x = a.v, out = 0, place = 1;
        for (int i = 0; i < f_; ++i) {
            out += place * ((p_ - x % p_) % p_);
            x /= p_;
            place *= p_;
        }
        return Fq{static_cast<std::uint16_t>(out)};
    }

    Fq mul_slow(Fq a, Fq b) const {
        if (a.v == 0 || b.v == 0) return zero();
        std::vector<int> prod = poly_mul(decode(a.v, f_), decode(b.v, f_));
        poly_mod(prod, modulus_);
        return Fq{encode(prod)};
    }

    void build_tables() {
        const std::size_t n = static_cast<std::size_t>(q_);
        add_.resize(n * n);
        mul_.resize(n * n);
        neg_.resize(n);
        inv_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            neg_[a] = neg_slow(Fq{static_cast<std::uint16_t>(a)}).v;
            for (std::size_t b = 0; b < n; ++b) {
                add_[a * n + b] = add_slow(Fq{static_cast<std::uint16_t>(a)},
                                           Fq{static_cast<std::uint16_t>(b)}).v;
                mul_[a * n + b] = mul_slow(Fq{static_cast<std::uint16_t>(a)},
                                           Fq{static_cast<std::uint16_t>(b)}).v;
            }
        }
        for (std::size_t a = 1; a < n; ++a) {
            for (std::size_t b = 1; b < n; ++b) {
                if (mul_[a * n + b] == 1) {
                    inv_[a] = static_cast<std::uint16_t>(b);
                    break;
                }
            }
            check_internal(inv_[a] != 0, "nonzero element without inverse");
        }
        if (p_ != 2) {
            square_.assign(n, 0);
            for (std::size_t a = 0; a < n; ++a) square_[mul_[a * n + a]] = 1;
        }
    }

    void build_trace_frobenius() {
        if (q_ > kTableCap) return;
        const std::size_t n = static_cast<std::size_t>(q_);
        frob_.resize(n);
        trace_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            Fq x{static_cast<std::uint16_t>(a)};
            Fq fx = x;
            for (int i = 1; i < p_; ++i) fx = mul_slow(fx, x);  // x^p
            frob_[a] = fx.v;
        }
        for (std::size_t a = 0; a < n; ++a) {
            Fq acc = zero();
            Fq t{static_cast<std::uint16_t>(a)};
            for (int i = 0; i < f_; ++i) {
                acc = add_slow(acc, t);
                t = Fq{frob_[t.v]};
            }
            check_internal(acc.v < static_cast<unsigned>(p_),
                           "absolute trace left the prime subfield");
            trace_[a] = static_cast<std::uint8_t>(acc.v);
        }
    }

    int p_, f_, q_;
    std::vector<int> modulus_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_, frob_;
    std::vector<std::uint8_t> square_, trace_;
};

}  // namespace tightset
