#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kchange/errors.hpp"
#include "kchange/problems.hpp"
#include "kchange/solver.hpp"

namespace kchange::harness {

struct IntRange {
        int lo = 0;
        int hi = 0;

        bool contains(int v) const { return lo <= v && v <= hi; }
        friend bool operator==(const IntRange &, const IntRange &) = default;
};

// "4" or "2..5".
inline IntRange
parse_range(const std::string &text)
{
        auto number = [&](const std::string &s) {
                std::size_t used = 0;
                int v = 0;
                try {
                        v = std::stoi(s, &used);
                } catch (const std::exception &) {
                        used = 0;
                }
                if (s.empty() || used != s.size())
                        throw ConfigError("bad range '" + text + "'");
                return v;
        };
        const auto dots = text.find("..");
        IntRange r;
        if (dots == std::string::npos) {
                r.lo = r.hi = number(text);
        } else {
                r.lo = number(text.substr(0, dots));
                r.hi = number(text.substr(dots + 2));
        }
        if (r.lo > r.hi)
                throw ConfigError("empty range '" + text + "'");
        return r;
}

enum class Format { Text, Json, Csv };

inline Format
parse_format(const std::string &s)
{
        if (s == "text")
                return Format::Text;
        if (s == "json")
                return Format::Json;
        if (s == "csv")
                return Format::Csv;
        throw ConfigError("unknown format '" + s + "'");
}

struct RunConfig {
        std::string mode; // solve | table | verify | play | cache
        Family family = Family::Search;
        IntRange n{4, 4};
        int d = 0;
        IntRange k{0, 0};
        Format format = Format::Text;
        std::string cache_path;
        double timeout_s = 0;
        std::uint64_t node_cap = 0;
        std::uint64_t memo_cap = 0;
        int threads = 1;
        bool pv = false;
        std::string questioner = "optimal";
        std::string adversary = "optimal";
        std::vector<std::string> only;
        bool long_run = false;
        bool timing = false;
        std::uint64_t seed = 0; // reserved: every agent is deterministic

        SolveOptions
        solve_options() const
        {
                SolveOptions o;
                o.node_cap = node_cap;
                o.time_limit_s = timeout_s;
                o.memo_cap = memo_cap;
                o.threads = threads;
                return o;
        }
};

inline void
validate(const RunConfig &c)
{
        if (c.n.lo < 1)
                throw ConfigError("n must be positive");
        if (c.k.lo < 0)
                throw ConfigError("k must be non-negative");
        if (c.threads < 1)
                throw ConfigError("threads must be positive");
        if (c.timeout_s < 0)
                throw ConfigError("timeout must be positive");
        if (uses_defectives(c.family) && (c.d < 0 || c.d > c.n.lo))
                throw ConfigError("d must lie in 0..n");
}

// Sizes the CLI accepts; the library itself goes further.
inline int
guarded_max_n(Family f, bool long_run)
{
        switch (f) {
        case Family::Search:
        case Family::GtExact:
        case Family::GtAtMost: return 6;
        case Family::Sorting:
        case Family::MinMax:
        case Family::MaxOnly: return 5;
        case Family::Connectivity: return long_run ? 5 : 4;
        }
        return 0;
}

inline void
check_capacity(const ProblemKind &kind, bool long_run)
{
        const int cap = guarded_max_n(kind.family, long_run);
        if (kind.n > cap) {
                std::string msg = kind.label() + ": n > " + std::to_string(cap) + " is beyond the capacity guard";
                if (kind.family == Family::Connectivity && kind.n == 5)
                        msg += " (pass --long-run for n=5)";
                throw CapacityError(msg);
        }
}

} // namespace kchange::harness
