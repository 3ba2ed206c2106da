// kchange: solve, tabulate, verify and play k-change query games.

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kchange/harness/cache.hpp"
#include "kchange/harness/config.hpp"
#include "kchange/harness/report.hpp"
#include "kchange/harness/runner.hpp"
#include "kchange/harness/verify.hpp"
#include "kchange/strategies.hpp"

using namespace kchange;
using namespace kchange::harness;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kLimit = 2, kBadConfig = 3 };

struct Flags {
        std::string problem = "search";
        std::string n = "4";
        int d = 0;
        std::string k = "0";
        std::string k_range;
        std::string format = "text";
        std::string cache;
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
        bool bounds = false;
        std::uint64_t seed = 0;
};

RunConfig
to_config(const Flags &f, const std::string &mode)
{
        RunConfig c;
        c.mode = mode;
        auto fam = parse_family(f.problem);
        if (!fam)
                throw ConfigError("unknown problem '" + f.problem + "'");
        c.family = *fam;
        c.n = parse_range(f.n);
        c.d = f.d;
        c.k = parse_range(f.k_range.empty() ? f.k : f.k_range);
        c.format = parse_format(f.format);
        c.cache_path = f.cache;
        c.timeout_s = f.timeout_s;
        c.node_cap = f.node_cap;
        c.memo_cap = f.memo_cap;
        c.threads = f.threads;
        c.pv = f.pv;
        c.questioner = f.questioner;
        c.adversary = f.adversary;
        c.only = f.only;
        c.long_run = f.long_run;
        c.timing = f.timing;
        c.seed = f.seed;
        validate(c);
        return c;
}

std::vector<ProblemKind>
kinds_of(const RunConfig &c)
{
        std::vector<ProblemKind> kinds;
        for (int n = c.n.lo; n <= c.n.hi; ++n) {
                ProblemKind kind{c.family, n, uses_defectives(c.family) ? c.d : 0};
                check_capacity(kind, c.long_run);
                kinds.push_back(kind);
        }
        return kinds;
}

std::unique_ptr<ResultCache>
open_cache(const RunConfig &c)
{
        if (c.cache_path.empty())
                return nullptr;
        auto cache = std::make_unique<ResultCache>(c.cache_path);
        if (cache->corrupt_lines())
                std::cerr << "warning: skipped " << cache->corrupt_lines() << " corrupt cache line(s)\n";
        return cache;
}

void
print_cells(const std::vector<CellResult> &cells, const RunConfig &c, bool with_pv)
{
        switch (c.format) {
        case Format::Json: {
                ordered_json arr = ordered_json::array();
                for (const auto &cell : cells) {
                        ordered_json j = cell_json(cell, c.timing);
                        if (with_pv && cell.pv)
                                j["principal_variation"] =
                                        transcript_json(build_problem(cell.kind), *cell.pv);
                        arr.push_back(j);
                }
                std::cout << (cells.size() == 1 ? arr[0] : arr).dump(2) << "\n";
                break;
        }
        case Format::Csv:
                std::cout << csv_header() << "\n";
                for (const auto &cell : cells)
                        std::cout << cell_csv(cell, c.timing) << "\n";
                break;
        case Format::Text:
                for (const auto &cell : cells) {
                        std::cout << cell_text(cell, c.timing) << "\n";
                        if (with_pv && cell.pv)
                                std::cout << transcript_text(build_problem(cell.kind), *cell.pv);
                }
                break;
        }
}

bool
all_exact(const std::vector<CellResult> &cells)
{
        for (const auto &c : cells)
                if (!c.exact)
                        return false;
        return true;
}

int
cmd_solve(const RunConfig &c)
{
        if (c.n.lo != c.n.hi)
                throw ConfigError("solve takes a single n (use table for ranges)");
        const ProblemKind kind = kinds_of(c).front();
        auto cache = open_cache(c);
        auto cells = solve_row(kind, c.k.lo, c.k.hi, cache.get(), c.solve_options(), c.pv);
        // solve reports only the requested k values; a range solves each
        print_cells(cells, c, c.pv);
        return all_exact(cells) ? kOk : kLimit;
}

int
cmd_table(const RunConfig &c)
{
        const auto kinds = kinds_of(c);
        auto cache = open_cache(c);
        auto rows = solve_rows(kinds, c.k.lo, c.k.hi, cache.get(), c.solve_options(), c.threads);
        std::vector<CellResult> cells;
        for (auto &row : rows)
                for (auto &cell : row)
                        cells.push_back(std::move(cell));
        print_cells(cells, c, false);
        return all_exact(cells) ? kOk : kLimit;
}

int
cmd_verify(const RunConfig &c)
{
        VerifyOptions o;
        o.only = c.only;
        o.threads = c.threads;
        o.long_run = c.long_run;
        const VerifyReport report = run_verify(o);
        if (c.format == Format::Json)
                std::cout << verify_json(report).dump(2) << "\n";
        else
                std::cout << verify_text(report);
        return report.passed() ? kOk : kVerifyFailed;
}

int
cmd_play(const RunConfig &c)
{
        if (c.n.lo != c.n.hi || c.k.lo != c.k.hi)
                throw ConfigError("play takes a single n and k");
        const ProblemKind kind = kinds_of(c).front();
        const ProblemSpec spec = build_problem(kind);
        auto solver = std::make_shared<Solver>(spec, c.solve_options());
        auto questioner = make_questioner(c.questioner, spec, solver);
        auto adversary = make_adversary(c.adversary, spec, solver);
        const Transcript t = play_match(spec, c.k.lo, *questioner, *adversary);
        if (c.format == Format::Json) {
                ordered_json j = transcript_json(spec, t);
                j["questioner"] = questioner->name();
                j["adversary"] = adversary->name();
                j["version"] = kVersion;
                std::cout << j.dump(2) << "\n";
        } else {
                std::cout << questioner->name() << " vs " << adversary->name() << ": " << transcript_text(spec, t);
        }
        return kOk;
}

int
cmd_cache(const RunConfig &c, const std::string &action, bool bounds)
{
        if (c.cache_path.empty())
                throw ConfigError("cache commands need --cache PATH");
        ResultCache cache(c.cache_path);
        if (action == "stats") {
                ordered_json j;
                j["path"] = cache.path();
                j["records"] = cache.records().size();
                j["corrupt_lines"] = cache.corrupt_lines();
                j["other_version"] = cache.other_version();
                j["version"] = kVersion;
                std::cout << (c.format == Format::Json ? j.dump(2) : j.dump()) << "\n";
                return kOk;
        }
        if (action == "list") {
                for (const auto &r : cache.records())
                        std::cout << to_json(r).dump() << "\n";
                return kOk;
        }
        const ProblemKind kind{c.family, c.n.lo, uses_defectives(c.family) ? c.d : 0};
        auto hit = cache.lookup(kind, c.k.lo, bounds);
        if (!hit) {
                std::cout << "miss\n";
                return kOk;
        }
        std::cout << to_json(*hit).dump() << "\n";
        return kOk;
}

void
add_problem_flags(CLI::App *cmd, Flags &f)
{
        cmd->add_option("--problem", f.problem, "search|gt-exact|gt-atmost|sorting|minmax|maxonly|connectivity");
        cmd->add_option("--n", f.n, "element count, or A..B for table");
        cmd->add_option("--d", f.d, "defective bound for group testing");
        cmd->add_option("--k", f.k, "change budget, or A..B");
        cmd->add_option("--k-range", f.k_range, "change budgets A..B");
}

void
add_run_flags(CLI::App *cmd, Flags &f)
{
        cmd->add_option("--format", f.format, "text|json|csv");
        cmd->add_option("--cache", f.cache, "JSON-lines result cache");
        cmd->add_option("--timeout-s", f.timeout_s, "time limit per solve (seconds)");
        cmd->add_option("--node-cap", f.node_cap, "node expansion limit per solve");
        cmd->add_option("--memo-cap", f.memo_cap, "memo entry limit");
        cmd->add_option("--threads", f.threads, "worker threads");
        cmd->add_flag("--long-run", f.long_run, "allow connectivity n=5");
        cmd->add_flag("--timing", f.timing, "report wall-clock times in machine output");
        cmd->add_option("--seed", f.seed, "reserved; all agents are deterministic");
}

} // namespace

int
main(int argc, char **argv)
{
        CLI::App app{"k-change query games: exact values, strategies and checks"};
        app.require_subcommand(1);
        Flags f;

        auto *solve = app.add_subcommand("solve", "game value D_k for one problem");
        add_problem_flags(solve, f);
        add_run_flags(solve, f);
        solve->add_flag("--pv", f.pv, "print a principal variation");

        auto *table = app.add_subcommand("table", "D_k over an (n, k) grid");
        add_problem_flags(table, f);
        add_run_flags(table, f);

        auto *verify = app.add_subcommand("verify", "check closed forms, strategy guarantees and properties");
        add_run_flags(verify, f);
        verify->add_option("--only", f.only, "check group(s) to run")->delimiter(',');

        auto *play = app.add_subcommand("play", "referee one match between named agents");
        add_problem_flags(play, f);
        add_run_flags(play, f);
        play->add_option("--questioner", f.questioner, "questioner name");
        play->add_option("--adversary", f.adversary, "adversary name");

        auto *cache = app.add_subcommand("cache", "inspect the result cache");
        std::string action = "stats";
        cache->add_option("action", action, "stats|list|lookup")->check(CLI::IsMember({"stats", "list", "lookup"}));
        add_problem_flags(cache, f);
        cache->add_option("--cache", f.cache, "JSON-lines result cache")->required();
        cache->add_option("--format", f.format, "text|json");
        cache->add_flag("--bounds", f.bounds, "accept incomplete records");

        try {
                app.parse(argc, argv);
        } catch (const CLI::ParseError &e) {
                const int rc = app.exit(e);
                return rc == 0 ? kOk : kBadConfig;
        }

        try {
                const std::string mode = app.get_subcommands().front()->get_name();
                const RunConfig c = to_config(f, mode);
                if (mode == "solve")
                        return cmd_solve(c);
                if (mode == "table")
                        return cmd_table(c);
                if (mode == "verify")
                        return cmd_verify(c);
                if (mode == "play")
                        return cmd_play(c);
                return cmd_cache(c, action, f.bounds);
        } catch (const ConfigError &e) {
                std::cerr << "error: " << e.what() << "\n";
                return kBadConfig;
        } catch (const CapacityError &e) {
                std::cerr << "error: " << e.what() << "\n";
                return kLimit;
        } catch (const LimitExceeded &e) {
                std::cerr << "error: " << e.what() << "\n";
                return kLimit;
        } catch (const Forfeit &e) {
                std::cerr << "error: " << e.what() << "\n";
                return kVerifyFailed;
        } catch (const Error &e) {
                std::cerr << "error: " << e.what() << "\n";
                return kVerifyFailed;
        }
}
