#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tightset/common.hpp"
#include "tightset/oct_census.hpp"
#include "tightset/pointset_io.hpp"
#include "tightset/polarcheck.hpp"
#include "tightset/whiteset.hpp"

// Command implementations behind the CLI: parameter tables, the counting
// censuses, construction of the tight set, and verification of point-set
// files. Each command returns the process exit code (0 = pass, 1 = a
// verification failed); usage problems throw config_error (exit 2) and
// violated internal invariants throw internal_error (exit 3).

namespace tightset {

struct CmdOptions {
    int p = 0;  // field characteristic; 0 = not set
    int f = 1;  // extension degree
    std::string family;
    int d = 0;  // ambient vector-space dimension
    std::string which;          // lemmas: comma-separated check list, empty = all
    std::string mode = "full";  // verify
    std::int64_t samples = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string in_path;
    std::string out_path;
    std::string report = "human";
};

inline std::pair<int, int> parse_prime_power(std::int64_t q) {
    check_config(q >= 2, "q must be at least 2");
    for (std::int64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        std::int64_t r = q;
        int f = 0;
        while (r % p == 0) {
            r /= p;
            ++f;
        }
        check_config(r == 1, "q = " + std::to_string(q) + " is not a prime power");
        return {static_cast<int>(p), f};
    }
    return {static_cast<int>(q), 1};  // prime
}

namespace detail {

inline bool structured_report(const CmdOptions& o) {
    if (o.report == "human") return false;
    if (o.report == "structured") return true;
    throw config_error("--report must be 'human' or 'structured'");
}

inline void require_field(const CmdOptions& o) {
    check_config(o.p >= 2, "field parameters missing: give --q or --p (with --f)");
    check_config(o.f >= 1, "--f must be at least 1");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline nlohmann::json histogram_json(const std::map<std::int64_t, std::int64_t>& h) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [value, count] : h) a.push_back({value, count});
    return a;
}

inline void print_histogram(std::ostream& out, const char* label,
                            const std::map<std::int64_t, std::int64_t>& h) {
    out << std::left << std::setw(18) << label;
    int shown = 0;
    for (const auto& [value, count] : h) {
        if (shown == 12) {
            out << " ... (" << h.size() << " bins)";
            break;
        }
        out << (shown ? "  " : "") << value << ":" << count;
        ++shown;
    }
    if (h.empty()) out << "(empty)";
    out << "\n";
}

inline void print_kv(std::ostream& out, const char* key, const std::string& value) {
    out << std::left << std::setw(18) << key << value << "\n";
}

inline void print_kv(std::ostream& out, const char* key, std::int64_t value) {
    print_kv(out, key, std::to_string(value));
}

}  // namespace detail

// --- params --------------------------------------------------------------------

inline int cmd_params(const CmdOptions& o, std::ostream& out) {
    const bool structured = detail::structured_report(o);
    detail::require_field(o);
    const auto fam = family_from_token(o.family);
    check_config(fam.has_value(), "unknown family token '" + o.family +
                                      "' (use w, qplus, qminus, q, or h)");
    check_config(o.d >= 2, "--d must give the ambient vector-space dimension");

    const PolarParams P = polar_params(*fam, o.d, o.p, o.f);
    const std::int64_t i = ipow(P.q, 4) + 1;
    const TightTarget t = tight_target(i, P);

    if (structured) {
        nlohmann::json j;
        j["command"] = "params";
        j["family"] = family_name(P.family);
        j["d"] = P.d;
        j["p"] = P.p;
        j["f"] = P.f;
        j["q"] = P.q;
        j["rank"] = P.rank;
        j["ovoid_number"] = P.ovoid_number;
        j["theta_lower"] = P.theta_lower;
        j["points"] = P.point_count;
        j["tight_i"] = t.i;
        j["set_size"] = t.set_size;
        j["h1"] = t.h1;
        j["h2"] = t.h2;
        out << j.dump(2) << "\n";
    } else {
        detail::print_kv(out, "space", std::string(family_name(P.family)) + "(" +
                                           std::to_string(P.d) + ") over F_" +
                                           std::to_string(P.q));
        detail::print_kv(out, "rank r", P.rank);
        detail::print_kv(out, "ovoid number", P.ovoid_number);
        detail::print_kv(out, "points", P.point_count);
        detail::print_kv(out, "tight i", std::to_string(t.i) + " (q^4 + 1)");
        detail::print_kv(out, "set size", t.set_size);
        detail::print_kv(out, "member perp h1", t.h1);
        detail::print_kv(out, "nonmember h2", t.h2);
    }
    return 0;
}

// --- lemmas --------------------------------------------------------------------

namespace detail {

struct LemmaLine {
    std::string name, detail;
    long long enumerated = 0, expected = 0;
    bool ok = false;
};

struct LemmaRun {
    std::vector<LemmaLine> lines;
    std::vector<std::pair<std::string, std::string>> skipped;  // name, reason

    void add(const std::string& name, const std::string& det, long long got,
             long long want) {
        lines.push_back({name, det, got, want, got == want});
    }
    bool all_ok() const {
        for (const LemmaLine& l : lines)
            if (!l.ok) return false;
        return true;
    }
};

}  // namespace detail

inline int cmd_lemmas(const CmdOptions& o, std::ostream& out) {
    const bool structured = detail::structured_report(o);
    detail::require_field(o);
    const Field F(o.p, o.f);
    const std::int64_t q = F.q();
    check_config(q >= 2 && q <= 5, "the counting censuses run at q in {2,3,4,5}");

    static const std::vector<std::string> kAll = {"pairsum", "normfiber", "zeroprod",
                                                  "ann", "fibers"};
    std::vector<std::string> which =
        o.which.empty() ? kAll : detail::split_list(o.which);
    for (const std::string& w : which)
        check_config(std::find(kAll.begin(), kAll.end(), w) != kAll.end(),
                     "unknown check '" + w +
                         "' (available: pairsum, normfiber, zeroprod, ann, fibers)");

    detail::LemmaRun run;
    for (const std::string& w : which) {
        if (w == "pairsum") {
            for (int k = 1; k <= 4; ++k)
                for (int a = 0; a < q; ++a) {
                    const CountCheck c = census_pair_sums(F, k, F.elem(a));
                    run.add("pairsum", "k=" + std::to_string(k) + " a=" + std::to_string(a),
                            c.enumerated, c.expected);
                }
        } else if (w == "normfiber") {
            for (int a = 0; a < q; ++a) {
                const NormFiberCheck c = census_norm_fiber(F, F.elem(a));
                run.add("normfiber", "a=" + std::to_string(a) + " full",
                        c.full.enumerated, c.full.expected);
                run.add("normfiber", "a=" + std::to_string(a) + " l8=0",
                        c.constrained.enumerated, c.constrained.expected);
            }
        } else if (w == "zeroprod") {
            if (q > 3) {
                run.skipped.emplace_back(w, "the exhaustive pair scan needs q <= 3");
                continue;
            }
            const CountCheck c = census_zero_product_pairs(F);
            run.add("zeroprod", "", c.enumerated, c.expected);
        } else if (w == "ann") {
            if (q > 3) {
                run.skipped.emplace_back(w, "the annihilator scan needs q <= 3");
                continue;
            }
            const AnnihilatorCheck c = census_annihilators(F);
            run.add("ann", "singular nonzero", c.singular_nonzero,
                    c.expected_singular_nonzero);
            run.add("ann", "zero-product pairs", c.zero_product_pairs,
                    c.expected_zero_product_pairs);
            run.add("ann", "dimension violations", c.violations, 0);
        } else if (w == "fibers") {
            if (q == 2) {
                run.skipped.emplace_back(w, "the fiber census requires q > 2");
                continue;
            }
            long long sum = 0;
            for (const OrbitFiberCheck& c : census_orbit_fibers(F)) {
                run.add("fibers",
                        "t=" + std::to_string(c.trace.v) + " n=" + std::to_string(c.norm.v),
                        c.size, c.expected);
                sum += c.size;
            }
            run.add("fibers", "bin sum", sum, ipow(q, 8));
        }
    }

    const bool pass = run.all_ok();
    if (structured) {
        nlohmann::json j;
        j["command"] = "lemmas";
        j["q"] = q;
        j["checks"] = nlohmann::json::array();
        for (const detail::LemmaLine& l : run.lines)
            j["checks"].push_back({{"name", l.name},
                                   {"detail", l.detail},
                                   {"enumerated", l.enumerated},
                                   {"formula", l.expected},
                                   {"pass", l.ok}});
        j["skipped"] = nlohmann::json::array();
        for (const auto& [name, reason] : run.skipped)
            j["skipped"].push_back({{"name", name}, {"reason", reason}});
        j["pass"] = pass;
        out << j.dump(2) << "\n";
    } else {
        for (const detail::LemmaLine& l : run.lines)
            out << std::left << std::setw(11) << l.name << std::setw(22) << l.detail
                << "enumerated " << std::setw(12) << l.enumerated << "formula "
                << std::setw(12) << l.expected << (l.ok ? "pass" : "FAIL") << "\n";
        for (const auto& [name, reason] : run.skipped)
            out << std::left << std::setw(11) << name << "skipped: " << reason << "\n";
        std::int64_t fails = 0;
        for (const detail::LemmaLine& l : run.lines) fails += l.ok ? 0 : 1;
        out << "summary: " << run.lines.size() << " checks, "
            << (run.lines.size() - static_cast<std::size_t>(fails)) << " pass, " << fails
            << " fail, " << run.skipped.size() << " skipped\n";
    }
    return pass ? 0 : 1;
}

// --- construct -------------------------------------------------------------------

inline int cmd_construct(const CmdOptions& o, std::ostream& out) {
    const bool structured = detail::structured_report(o);
    detail::require_field(o);
    check_config(!o.out_path.empty(), "construct needs --out PATH");
    const Field F(o.p, o.f);
    check_config(F.q() == 2 || F.q() == 3,
                 "construction is supported at q = 2 and q = 3");

    const auto start = std::chrono::steady_clock::now();
    const WSpace ws = wspace_make(F);
    const M1Build m1 = build_m1(ws);
    write_pointset(m1.points, o.out_path);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const int q = F.q();
    if (structured) {
        nlohmann::json j;
        j["command"] = "construct";
        j["q"] = q;
        j["dim"] = ws.dim;
        j["basis"] = ws.basis_version;
        j["type1_vectors"] = m1.type1_vectors;
        j["type2_vectors"] = m1.type2_vectors;
        j["type3_vectors"] = m1.type3_vectors;
        j["total_vectors"] = m1.total_vectors();
        j["expected_type1_vectors"] = expect_type1_vectors(q);
        j["expected_type2_vectors"] = expect_type2_vectors(q);
        j["expected_type3_vectors"] = expect_type3_vectors(q);
        j["expected_total_vectors"] = expect_m1_vectors(q);
        j["points"] = m1.points.count();
        j["expected_points"] = expect_m1_points(q);
        j["out"] = o.out_path;
        j["wall_time"] = wall;
        out << j.dump(2) << "\n";
    } else {
        detail::print_kv(out, "field", "F_" + std::to_string(q));
        detail::print_kv(out, "space dim", ws.dim);
        detail::print_kv(out, "type I vectors",
                         std::to_string(m1.type1_vectors) + " (expected " +
                             std::to_string(expect_type1_vectors(q)) + ")");
        detail::print_kv(out, "type II vectors",
                         std::to_string(m1.type2_vectors) + " (expected " +
                             std::to_string(expect_type2_vectors(q)) + ")");
        detail::print_kv(out, "type III vectors",
                         std::to_string(m1.type3_vectors) + " (expected " +
                             std::to_string(expect_type3_vectors(q)) + ")");
        detail::print_kv(out, "total vectors",
                         std::to_string(m1.total_vectors()) + " (expected " +
                             std::to_string(expect_m1_vectors(q)) + ")");
        detail::print_kv(out, "points",
                         std::to_string(m1.points.count()) + " (expected " +
                             std::to_string(expect_m1_points(q)) + ")");
        detail::print_kv(out, "output", o.out_path);
        std::ostringstream w;
        w << std::fixed << std::setprecision(2) << wall << " s";
        detail::print_kv(out, "wall time", w.str());
    }
    return 0;
}

// --- verify --------------------------------------------------------------------

namespace detail {

inline VerifyMode parse_mode(const std::string& m) {
    if (m == "full") return VerifyMode::full;
    if (m == "member-sample") return VerifyMode::member_sample;
    if (m == "nonmember-sample") return VerifyMode::nonmember_sample;
    throw config_error("--mode must be full, member-sample, or nonmember-sample");
}

}  // namespace detail

inline int cmd_verify(const CmdOptions& o, std::ostream& out) {
    const bool structured = detail::structured_report(o);
    check_config(!o.in_path.empty(), "verify needs --in PATH");
    const VerifyMode mode = detail::parse_mode(o.mode);

    const PointSet S = read_pointset(o.in_path);
    const Field F(S.p, S.f);

    QuadSpace qs;
    PolarFamily fam;
    if (S.basis == "F4-min-v1") {
        const WSpace ws = wspace_make(F);
        qs = quadspace_from_w(ws);
        fam = (F.p() == 3) ? PolarFamily::parabolic : PolarFamily::elliptic;
    } else if (S.basis == "std-W") {
        qs = quadspace_symplectic(F, S.dim);
        fam = PolarFamily::symplectic;
    } else if (S.basis == "std-Qplus") {
        qs = quadspace_hyperbolic(F, S.dim);
        fam = PolarFamily::hyperbolic;
    } else if (S.basis == "std-Q") {
        qs = quadspace_parabolic(F, S.dim);
        fam = PolarFamily::parabolic;
    } else if (S.basis == "std-Qminus") {
        qs = quadspace_elliptic(F, S.dim);
        fam = PolarFamily::elliptic;
    } else {
        throw config_error("unknown basis tag in header: " + S.basis);
    }
    const PolarParams P = polar_params(fam, S.dim, S.p, S.f);

    const SizeHypothesis hy = classify_size(S.count(), P);
    check_config(hy.tight_i.has_value(),
                 "set size " + std::to_string(S.count()) +
                     " is not an i-tight size for this space");
    const TightTarget target = tight_target(*hy.tight_i, P);

    const TightReport rep =
        verify_tight(qs, S, target, mode, o.samples, o.seed, o.threads);

    const double pairs =
        static_cast<double>(rep.checked + rep.nonmembers_checked) *
        static_cast<double>(rep.set_size);
    if (structured) {
        nlohmann::json j;
        j["command"] = "verify";
        j["in"] = o.in_path;
        j["family"] = family_name(P.family);
        j["d"] = P.d;
        j["q"] = P.q;
        j["basis"] = S.basis;
        j["set_size"] = rep.set_size;
        j["expected_size"] = target.set_size;
        j["size_ok"] = rep.size_ok;
        j["tight_i"] = target.i;
        j["expected_h1"] = rep.expected_h1;
        j["expected_h2"] = rep.expected_h2;
        j["mode"] = verify_mode_name(rep.mode);
        j["samples"] = o.samples;
        j["seed"] = o.seed;
        j["threads"] = o.threads;
        j["members_checked"] = rep.checked;
        j["nonmembers_checked"] = rep.nonmembers_checked;
        j["failures"] = rep.failures;
        j["histogram"] = detail::histogram_json(rep.histogram);
        j["nonmember_histogram"] = detail::histogram_json(rep.nonmember_histogram);
        j["first_failures"] = nlohmann::json::array();
        for (const auto& [code, count] : rep.first_failures)
            j["first_failures"].push_back({{"code", code}, {"perp_count", count}});
        j["pass"] = rep.pass;
        j["wall_time"] = rep.wall_time;
        j["pair_rate"] = rep.wall_time > 0 ? pairs / rep.wall_time : 0.0;
        out << j.dump(2) << "\n";
    } else {
        detail::print_kv(out, "input", o.in_path);
        detail::print_kv(out, "space", std::string(family_name(P.family)) + "(" +
                                           std::to_string(P.d) + ") over F_" +
                                           std::to_string(P.q) + ", basis " + S.basis);
        detail::print_kv(out, "set size",
                         std::to_string(rep.set_size) + " (expected " +
                             std::to_string(target.set_size) +
                             (rep.size_ok ? ", ok)" : ", MISMATCH)"));
        detail::print_kv(out, "tight i", target.i);
        detail::print_kv(out, "target h1", target.h1);
        detail::print_kv(out, "target h2", target.h2);
        detail::print_kv(out, "mode", verify_mode_name(rep.mode));
        detail::print_kv(out, "seed", static_cast<std::int64_t>(o.seed));
        detail::print_kv(out, "members checked", rep.checked);
        detail::print_kv(out, "nonmembers", rep.nonmembers_checked);
        detail::print_histogram(out, "histogram", rep.histogram);
        detail::print_histogram(out, "nonmember hist", rep.nonmember_histogram);
        detail::print_kv(out, "failures", rep.failures);
        for (const auto& [code, count] : rep.first_failures)
            out << std::left << std::setw(18) << "  off-target"
                << "code " << code << " perp " << count << "\n";
        std::ostringstream w;
        w << std::fixed << std::setprecision(2) << rep.wall_time << " s";
        detail::print_kv(out, "wall time", w.str());
        std::ostringstream r;
        r << std::scientific << std::setprecision(2)
          << (rep.wall_time > 0 ? pairs / rep.wall_time : 0.0) << " pairs/s";
        detail::print_kv(out, "pair rate", r.str());
        detail::print_kv(out, "verdict", rep.pass ? "PASS" : "FAIL");
    }
    return rep.pass ? 0 : 1;
}

}  // namespace tightset
