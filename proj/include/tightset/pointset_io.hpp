#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tightset/common.hpp"
#include "tightset/pointset.hpp"

// Point-set files ("TSB1"): a single JSON header line
//   {"basis":...,"bits_per_coord":...,"count":...,"dim":...,"f":...,"magic":"TSB1","p":...}
// terminated by '\n', followed by exactly `count` packed codes as 8-byte
// little-endian words in strictly ascending order. Writing the same set twice
// produces byte-identical files.

namespace tightset {

inline void write_pointset(const PointSet& s, const std::string& path) {
    check_config(s.dim >= 1 && s.bits >= 1 && s.dim * s.bits <= 64,
                 "point set header is malformed");
    for (std::size_t i = 1; i < s.codes.size(); ++i)
        check_config(s.codes[i - 1] < s.codes[i], "codes must be strictly ascending");

    nlohmann::json h;
    h["magic"] = "TSB1";
    h["p"] = s.p;
    h["f"] = s.f;
    h["dim"] = s.dim;
    h["bits_per_coord"] = s.bits;
    h["count"] = s.count();
    h["basis"] = s.basis;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    check_config(out.good(), "cannot open for writing: " + path);
    out << h.dump() << '\n';
    std::vector<char> buf;
    buf.reserve(s.codes.size() * 8);
    for (std::uint64_t code : s.codes)
        for (int b = 0; b < 8; ++b)
            buf.push_back(static_cast<char>((code >> (8 * b)) & 0xff));
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out.flush();
    check_config(out.good(), "write failed: " + path);
}

inline PointSet read_pointset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    check_config(in.good(), "cannot open for reading: " + path);
    std::string line;
    check_config(static_cast<bool>(std::getline(in, line)), "missing header line");

    const nlohmann::json h = nlohmann::json::parse(line, nullptr, false);
    check_config(!h.is_discarded() && h.is_object(), "header is not a structured object");
    check_config(h.contains("magic") && h["magic"].is_string() &&
                     h["magic"].get<std::string>() == "TSB1",
                 "bad magic");
    for (const char* key : {"p", "f", "dim", "bits_per_coord", "count"})
        check_config(h.contains(key) && h[key].is_number_integer(),
                     std::string("header field missing or non-integer: ") + key);
    check_config(h.contains("basis") && h["basis"].is_string(), "header field missing: basis");

    PointSet s;
    s.p = h["p"].get<int>();
    s.f = h["f"].get<int>();
    s.dim = h["dim"].get<int>();
    s.bits = h["bits_per_coord"].get<int>();
    s.basis = h["basis"].get<std::string>();
    const std::int64_t count = h["count"].get<std::int64_t>();
    check_config(s.p >= 2 && s.f >= 1 && count >= 0, "header values out of range");
    check_config(s.dim >= 1 && s.bits >= 1 && s.dim * s.bits <= 64,
                 "header dimensions out of range");

    std::vector<char> buf(static_cast<std::size_t>(count) * 8);
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    check_config(in.gcount() == static_cast<std::streamsize>(buf.size()),
                 "body is shorter than the declared count");
    check_config(in.peek() == std::char_traits<char>::eof(),
                 "trailing bytes after the declared count");

    s.codes.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < s.codes.size(); ++i) {
        std::uint64_t code = 0;
        for (int b = 7; b >= 0; --b)
            code = (code << 8) |
                   static_cast<std::uint8_t>(buf[i * 8 + static_cast<std::size_t>(b)]);
        s.codes[i] = code;
        if (i > 0)
            check_config(s.codes[i - 1] < s.codes[i], "codes are not strictly ascending");
    }
    return s;
}

}  // namespace tightset
