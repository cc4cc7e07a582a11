#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Shared plumbing: error taxonomy and checked 64-bit integer helpers.
//
// Error taxonomy maps straight onto the CLI exit-code contract:
//   config_error   -> bad arguments / violated preconditions (exit 2)
//   internal_error -> violated internal invariant, e.g. a count mismatch
//                     detected mid-computation (exit 3)
// A verification that merely *fails* is not an error; it is reported through
// return values (exit 1 at the CLI layer).

namespace tightset {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_internal(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

inline void check_config(bool cond, const std::string& msg) {
    if (!cond) throw config_error(msg);
}

// q^e and products that must fit in int64; counting formulas at the largest
// admitted parameters approach 10^17, so intermediates go through __int128.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN)
        throw config_error("integer overflow in counting formula");
    return static_cast<std::int64_t>(r);
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    if (exp < 0) throw config_error("negative exponent");
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

}  // namespace tightset
