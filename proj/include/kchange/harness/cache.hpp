// Append-only JSON-lines store of solved game values.

#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kchange/errors.hpp"
#include "kchange/problems.hpp"
#include "kchange/version.hpp"

namespace kchange::harness {

struct CacheRecord {
        std::string problem;
        int n = 0;
        int d = 0;
        int k = 0;
        int lo = 0;
        int hi = 0;
        bool exact = false;
        std::uint64_t nodes = 0;
        std::string version = kVersion;
        std::string timestamp;

        bool
        same_key(const CacheRecord &o) const
        {
                return problem == o.problem && n == o.n && d == o.d && k == o.k && version == o.version;
        }
};

inline std::string
utc_timestamp()
{
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
}

inline nlohmann::ordered_json
to_json(const CacheRecord &r)
{
        nlohmann::ordered_json j;
        j["problem"] = r.problem;
        j["params"] = {{"n", r.n}, {"d", r.d}};
        j["k"] = r.k;
        j["lo"] = r.lo;
        j["hi"] = r.hi;
        j["exact"] = r.exact;
        j["nodes"] = r.nodes;
        j["version"] = r.version;
        j["timestamp"] = r.timestamp;
        return j;
}

// Throws nlohmann::json::exception on missing or mistyped fields.
inline CacheRecord
record_from_json(const nlohmann::json &j)
{
        CacheRecord r;
        r.problem = j.at("problem").get<std::string>();
        r.n = j.at("params").at("n").get<int>();
        r.d = j.at("params").value("d", 0);
        r.k = j.at("k").get<int>();
        r.lo = j.at("lo").get<int>();
        r.hi = j.at("hi").get<int>();
        r.exact = j.at("exact").get<bool>();
        r.nodes = j.value("nodes", std::uint64_t{0});
        r.version = j.at("version").get<std::string>();
        r.timestamp = j.value("timestamp", std::string{});
        return r;
}

inline CacheRecord
make_record(const ProblemKind &kind, int k, int lo, int hi, bool exact, std::uint64_t nodes)
{
        CacheRecord r;
        r.problem = family_name(kind.family);
        r.n = kind.n;
        r.d = uses_defectives(kind.family) ? kind.d : 0;
        r.k = k;
        r.lo = lo;
        r.hi = hi;
        r.exact = exact;
        r.nodes = nodes;
        r.timestamp = utc_timestamp();
        return r;
}

class ResultCache {
public:
        explicit ResultCache(std::string path) : path_(std::move(path)) { load(); }

        const std::string &path() const { return path_; }
        std::size_t corrupt_lines() const { return corrupt_; }
        std::size_t other_version() const { return other_version_; }
        const std::vector<CacheRecord> &records() const { return records_; }

        // Newest exact record for the key; incomplete records only on request.
        std::optional<CacheRecord>
        lookup(const ProblemKind &kind, int k, bool allow_bounds = false) const
        {
                std::lock_guard lock(mu_);
                const CacheRecord probe = make_key(kind, k);
                std::optional<CacheRecord> bound;
                for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
                        if (!it->same_key(probe))
                                continue;
                        if (it->exact)
                                return *it;
                        if (allow_bounds && !bound)
                                bound = *it;
                }
                return bound;
        }

        // Exact values are immutable: storing a different exact value for an
        // existing key is an error, storing the same one is a no-op.
        void
        store(const CacheRecord &r)
        {
                std::lock_guard lock(mu_);
                for (const auto &old : records_) {
                        if (!old.exact || !old.same_key(r))
                                continue;
                        if (r.exact && old.lo == r.lo)
                                return;
                        if (r.exact)
                                throw Error("cache: conflicting exact value for " + r.problem + " n=" +
                                            std::to_string(r.n) + " k=" + std::to_string(r.k));
                        return; // a bound never replaces an exact value
                }
                std::ofstream out(path_, std::ios::app);
                if (!out)
                        throw Error("cache: cannot append to " + path_);
                out << to_json(r).dump() << '\n';
                records_.push_back(r);
        }

private:
        static CacheRecord
        make_key(const ProblemKind &kind, int k)
        {
                CacheRecord r;
                r.problem = family_name(kind.family);
                r.n = kind.n;
                r.d = uses_defectives(kind.family) ? kind.d : 0;
                r.k = k;
                return r;
        }

        void
        load()
        {
                std::ifstream in(path_);
                if (!in)
                        return; // a missing file is an empty cache
                std::string line;
                while (std::getline(in, line)) {
                        if (line.empty())
                                continue;
                        try {
                                CacheRecord r = record_from_json(nlohmann::json::parse(line));
                                if (r.version != kVersion) {
                                        ++other_version_;
                                        continue;
                                }
                                records_.push_back(std::move(r));
                        } catch (const nlohmann::json::exception &) {
                                ++corrupt_;
                        }
                }
        }

        std::string path_;
        std::vector<CacheRecord> records_;
        std::size_t corrupt_ = 0;
        std::size_t other_version_ = 0;
        mutable std::mutex mu_;
};

} // namespace kchange::harness
