// Solving cells of the (problem, n, k) grid with the result cache in front.

#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "kchange/harness/cache.hpp"
#include "kchange/problems.hpp"
#include "kchange/solver.hpp"

namespace kchange::harness {

struct CellResult {
        ProblemKind kind;
        int k = 0;
        int lo = 0;
        int hi = 0;
        bool exact = false;
        std::uint64_t nodes = 0;
        double millis = 0;
        bool from_cache = false;
        std::optional<Transcript> pv;
        std::optional<Prediction> predicted;
};

// Solve k in [k.lo, k.hi] for one problem with a single solver, so larger
// budgets reuse the memo of smaller ones. Cached exact cells are not
// re-solved unless a principal variation is wanted.
inline std::vector<CellResult>
solve_row(const ProblemKind &kind, int k_lo, int k_hi, ResultCache *cache, const SolveOptions &options,
          bool want_pv = false, bool want_prediction = true)
{
        std::vector<CellResult> row;
        std::unique_ptr<Solver> solver;
        auto get_solver = [&]() -> Solver & {
                if (!solver)
                        solver = std::make_unique<Solver>(build_problem(kind), options);
                return *solver;
        };
        bool limited = false;
        for (int k = k_lo; k <= k_hi; ++k) {
                CellResult c;
                c.kind = kind;
                c.k = k;
                const auto start = std::chrono::steady_clock::now();
                std::optional<CacheRecord> hit;
                if (cache && !want_pv)
                        hit = cache->lookup(kind, k);
                if (hit) {
                        c.lo = hit->lo;
                        c.hi = hit->hi;
                        c.exact = true;
                        c.nodes = hit->nodes;
                        c.from_cache = true;
                } else if (limited) {
                        // a limit already hit on a smaller budget; keep the bounds honest
                        c.lo = row.back().lo;
                        c.hi = get_solver().undetermined_count(get_solver().spec().all_inputs());
                } else {
                        SolveResult r = want_pv ? get_solver().game_value_with_pv(k) : get_solver().game_value(k);
                        c.exact = r.complete;
                        c.lo = r.complete ? r.value : r.lower;
                        c.hi = r.complete ? r.value : r.upper;
                        c.nodes = r.nodes_expanded;
                        c.pv = r.principal_variation;
                        limited = !r.complete;
                        if (cache)
                                cache->store(make_record(kind, k, c.lo, c.hi, c.exact, c.nodes));
                }
                c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                row.push_back(std::move(c));
        }
        if (want_prediction) {
                std::optional<int> D;
                for (auto &c : row) {
                        try {
                                c.predicted = predicted_value(kind, c.k, D);
                        } catch (const DependencyError &) {
                                if (!D)
                                        D = get_solver().deterministic_value(get_solver().spec().all_inputs());
                                c.predicted = predicted_value(kind, c.k, D);
                        }
                }
        }
        return row;
}

// Rows solved concurrently (up to `threads`), returned in input order.
inline std::vector<std::vector<CellResult>>
solve_rows(const std::vector<ProblemKind> &kinds, int k_lo, int k_hi, ResultCache *cache, SolveOptions options,
           int threads)
{
        std::vector<std::vector<CellResult>> out(kinds.size());
        options.threads = 1;
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex mu;
        auto work = [&] {
                for (std::size_t i = next++; i < kinds.size(); i = next++) {
                        try {
                                out[i] = solve_row(kinds[i], k_lo, k_hi, cache, options);
                        } catch (...) {
                                std::lock_guard lock(mu);
                                if (!failure)
                                        failure = std::current_exception();
                        }
                }
        };
        {
                std::vector<std::jthread> pool;
                for (int t = 0; t < std::max(1, threads); ++t)
                        pool.emplace_back(work);
        }
        if (failure)
                std::rethrow_exception(failure);
        return out;
}

} // namespace kchange::harness
