#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "tightset/albert.hpp"
#include "tightset/common.hpp"
#include "tightset/galois.hpp"

// Packed projective point sets.
//
// A point is a canonicalized coordinate vector (first nonzero coordinate 1)
// packed into a single 64-bit code: coordinate i occupies bits
// [i*b, (i+1)*b) with b = ceil(log2 q). Codes are kept strictly increasing,
// so a point set has exactly one byte representation.

namespace tightset {

inline int bits_for_q(int q) {
    return std::bit_width(static_cast<unsigned>(q - 1));
}

struct PointSet {
    int p = 0, f = 0;
    int dim = 0;
    int bits = 0;
    std::string basis;
    std::vector<std::uint64_t> codes;

    std::int64_t count() const { return static_cast<std::int64_t>(codes.size()); }

    bool contains(std::uint64_t code) const {
        auto it = std::lower_bound(codes.begin(), codes.end(), code);
        return it != codes.end() && *it == code;
    }
};

inline std::uint64_t pack_coords(const WCoords& c, int dim, int bits) {
    check_config(dim * bits <= 64, "packed code would exceed 64 bits");
    std::uint64_t code = 0;
    for (int i = dim - 1; i >= 0; --i)
        code = (code << bits) | c[i].v;
    return code;
}

inline WCoords unpack_coords(std::uint64_t code, int dim, int bits) {
    WCoords c{};
    const std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
    for (int i = 0; i < dim; ++i) {
        c[i] = Fq{static_cast<std::uint16_t>(code & mask)};
        code >>= bits;
    }
    return c;
}

}  // namespace tightset
