// Exact values of the k-change game.
//
// A position is (S, x, c): the consistent set, the current input and the
// changes left. Its value is
//
//   V(S,x,c) = 0                                     if S is a certificate
//            = 1 + min_q max( V(S_q(x), x, c),       answer from x
//                             W(S_q^yes, c-1),        change, then YES
//                             W(S_q^no,  c-1) )       change, then NO
//
// where q ranges over queries undetermined on S, S_q(x) is S restricted by x's
// answer, and W(T,c) = max_{y in T} V(T,y,c) is the value of T when the
// Adversary may still pick the current input freely. The change terms exist
// only when c > 0. The game value with budget k is W(all inputs, k): the
// initial choice of input is not a change.
//
// Every change happens at a query, so a budget larger than the number of
// undetermined queries of S is equivalent to that number; budgets are clamped
// accordingly before lookups.

#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kchange/errors.hpp"
#include "kchange/game.hpp"
#include "kchange/input_set.hpp"

namespace kchange {

struct SolveOptions {
        bool alpha_beta = true;
        bool memoize = true;
        std::uint64_t node_cap = 0;  // 0: unlimited
        double time_limit_s = 0;     // 0: unlimited
        std::size_t memo_cap = 0;    // set entries, 0: unlimited
        int threads = 1;
};

struct SolveResult {
        bool complete = false;
        int value = -1; // valid when complete
        int lower = 0;  // certified bounds; equal to value when complete
        int upper = 0;
        std::uint64_t nodes_expanded = 0;
        std::size_t memo_entries = 0;
        double elapsed_ms = 0;
        std::optional<Transcript> principal_variation;
};

namespace detail {

// Values of V(S, ., c) for the members of one S, indexed by rank in S, plus W(S, c).
struct Layer {
        explicit Layer(int members) : values(new std::atomic<std::int8_t>[members])
        {
                for (int i = 0; i < members; ++i)
                        values[i].store(-1, std::memory_order_relaxed);
        }

        std::unique_ptr<std::atomic<std::int8_t>[]> values;
        std::atomic<std::int8_t> set_value{-1};
};

struct SetEntry {
        SetEntry(int members, int layer_count)
                : members(members), layer_count(layer_count), layers(new std::atomic<Layer *>[layer_count])
        {
                for (int c = 0; c < layer_count; ++c)
                        layers[c].store(nullptr, std::memory_order_relaxed);
        }

        ~SetEntry()
        {
                for (int c = 0; c < layer_count; ++c)
                        delete layers[c].load(std::memory_order_relaxed);
        }

        SetEntry(const SetEntry &) = delete;
        SetEntry &operator=(const SetEntry &) = delete;

        Layer &
        layer(int c)
        {
                Layer *l = layers[c].load(std::memory_order_acquire);
                if (l)
                        return *l;
                auto fresh = std::make_unique<Layer>(members);
                Layer *expected = nullptr;
                if (layers[c].compare_exchange_strong(expected, fresh.get(), std::memory_order_acq_rel))
                        return *fresh.release();
                return *expected;
        }

        const int members;
        const int layer_count;
        std::unique_ptr<std::atomic<Layer *>[]> layers;
        std::atomic<std::int8_t> deterministic{-1};
        std::atomic<std::int8_t> undetermined{-1};
};

// One logical map S -> SetEntry; concurrent readers, insert-if-absent.
class MemoTable {
public:
        static constexpr int kShards = 64;

        SetEntry *
        find(const InputSet &s)
        {
                Shard &sh = shards_[s.hash() % kShards];
                std::shared_lock lock(sh.mutex);
                auto it = sh.map.find(s);
                return it == sh.map.end() ? nullptr : it->second.get();
        }

        template <typename Make>
        SetEntry *
        find_or_insert(const InputSet &s, Make &&make)
        {
                if (SetEntry *e = find(s))
                        return e;
                Shard &sh = shards_[s.hash() % kShards];
                std::unique_lock lock(sh.mutex);
                auto [it, inserted] = sh.map.try_emplace(s);
                if (inserted) {
                        it->second = make();
                        size_.fetch_add(1, std::memory_order_relaxed);
                }
                return it->second.get();
        }

        std::size_t size() const { return size_.load(std::memory_order_relaxed); }

private:
        struct Shard {
                std::shared_mutex mutex;
                std::unordered_map<InputSet, std::unique_ptr<SetEntry>, InputSetHash> map;
        };

        std::array<Shard, kShards> shards_;
        std::atomic<std::size_t> size_{0};
};

inline std::string
pattern_key(const GameState &s)
{
        std::string key(s.answers.begin(), s.answers.end());
        key += '|';
        key += std::to_string(s.current);
        key += '|';
        key += std::to_string(s.changes_left);
        return key;
}

} // namespace detail

class Solver {
public:
        explicit Solver(ProblemSpec spec, SolveOptions options = {})
                : spec_(std::move(spec)), options_(options), all_(spec_.all_inputs())
        {
        }

        Solver(const Solver &) = delete;
        Solver &operator=(const Solver &) = delete;

        const ProblemSpec &spec() const { return spec_; }
        const SolveOptions &options() const { return options_; }
        std::size_t memo_entries() const { return memo_.size(); }
        std::uint64_t nodes_expanded() const { return nodes_.load(std::memory_order_relaxed); }

        // D_k: the value of the game with at most k changes.
        SolveResult
        game_value(int k)
        {
                if (k < 0)
                        throw Error("game_value: k must be non-negative");
                const auto start = std::chrono::steady_clock::now();
                arm_limits(start);
                const std::uint64_t nodes_before = nodes_expanded();
                SolveResult r;
                r.upper = undetermined_count(all_);
                const int top = clamp_budget(all_, k);
                try {
                        // Lower budgets first: each completed one is a certified lower bound.
                        for (int j = 0; j <= top; ++j) {
                                r.lower = root_value(j);
                                if (j == top) {
                                        r.complete = true;
                                        r.value = r.upper = r.lower;
                                        solved_budgets_.push_back(k);
                                }
                        }
                } catch (const LimitExceeded &) {
                        r.complete = false;
                        r.value = -1;
                        if (auto d = known_deterministic(all_))
                                r.upper = *d;
                }
                disarm_limits();
                r.nodes_expanded = nodes_expanded() - nodes_before;
                r.memo_entries = memo_entries();
                r.elapsed_ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                return r;
        }

        SolveResult
        game_value_with_pv(int k)
        {
                SolveResult r = game_value(k);
                if (r.complete)
                        r.principal_variation = principal_variation(k);
                return r;
        }

        // V(S, x, c).
        int
        value(const InputSet &s, int x, int c)
        {
                if (is_certificate(s, spec_))
                        return 0;
                c = clamp_budget(s, c);
                detail::SetEntry *e = entry(s);
                std::atomic<std::int8_t> *slot = nullptr;
                if (e) {
                        slot = &e->layer(c).values[s.rank(x)];
                        if (int v = slot->load(std::memory_order_relaxed); v >= 0)
                                return v;
                }
                expand();
                const bool ab = options_.alpha_beta;
                int best = INT_MAX;
                for (int q = 0; q < spec_.query_count(); ++q) {
                        const InputSet &yes_q = spec_.yes_set(q);
                        InputSet yes = s & yes_q;
                        if (yes.empty())
                                continue;
                        InputSet no = s - yes_q;
                        if (no.empty())
                                continue;
                        int worst = 1 + value(yes_q.contains(x) ? yes : no, x, c);
                        if (ab && worst >= best)
                                continue;
                        if (c > 0) {
                                worst = std::max(worst, 1 + set_value(yes, c - 1));
                                if (ab && worst >= best)
                                        continue;
                                worst = std::max(worst, 1 + set_value(no, c - 1));
                        }
                        best = std::min(best, worst);
                        if (ab && best == 1)
                                break;
                }
                if (best == INT_MAX)
                        throw Error(spec_.name() + ": no undetermined query left on a non-certificate set");
                if (slot)
                        slot->store(static_cast<std::int8_t>(best), std::memory_order_relaxed);
                return best;
        }

        // W(S, c): the Adversary may still choose any member of S as current.
        int
        set_value(const InputSet &s, int c)
        {
                if (is_certificate(s, spec_))
                        return 0;
                c = clamp_budget(s, c);
                detail::SetEntry *e = entry(s);
                if (e) {
                        if (int v = e->layer(c).set_value.load(std::memory_order_relaxed); v >= 0)
                                return v;
                }
                int best = 0;
                s.for_each([&](int x) { best = std::max(best, value(s, x, c)); });
                if (e)
                        e->layer(c).set_value.store(static_cast<std::int8_t>(best), std::memory_order_relaxed);
                return best;
        }

        // D(S): the unrestricted (deterministic) query complexity of S.
        int
        deterministic_value(const InputSet &s)
        {
                if (is_certificate(s, spec_))
                        return 0;
                detail::SetEntry *e = entry(s);
                if (e) {
                        if (int v = e->deterministic.load(std::memory_order_relaxed); v >= 0)
                                return v;
                }
                expand();
                int best = INT_MAX;
                for (int q = 0; q < spec_.query_count(); ++q) {
                        InputSet yes = s & spec_.yes_set(q);
                        if (yes.empty())
                                continue;
                        InputSet no = s - spec_.yes_set(q);
                        if (no.empty())
                                continue;
                        int worst = 1 + deterministic_value(yes);
                        if (options_.alpha_beta && worst >= best)
                                continue;
                        worst = std::max(worst, 1 + deterministic_value(no));
                        best = std::min(best, worst);
                }
                if (best == INT_MAX)
                        throw Error(spec_.name() + ": no undetermined query left on a non-certificate set");
                if (e)
                        e->deterministic.store(static_cast<std::int8_t>(best), std::memory_order_relaxed);
                return best;
        }

        int deterministic_value() { return deterministic_value(all_); }

        // Worst-case length when query q is asked next from (S, x, c).
        int
        query_value(const InputSet &s, int x, int c, int q)
        {
                InputSet yes = s & spec_.yes_set(q);
                InputSet no = s - spec_.yes_set(q);
                int worst = 1 + value(spec_.yes_set(q).contains(x) ? yes : no, x, c);
                if (c > 0) {
                        if (!yes.empty())
                                worst = std::max(worst, 1 + set_value(yes, c - 1));
                        if (!no.empty())
                                worst = std::max(worst, 1 + set_value(no, c - 1));
                }
                return worst;
        }

        // Lowest-index query realising V(S, x, c); -1 on a certificate.
        int
        best_query(const InputSet &s, int x, int c, const GameState *state = nullptr)
        {
                if (is_certificate(s, spec_))
                        return -1;
                const int target = value(s, x, c);
                for (int q = 0; q < spec_.query_count(); ++q) {
                        if (state && state->asked(q))
                                continue;
                        if (!undetermined(s, q))
                                continue;
                        if (query_value(s, x, c, q) == target)
                                return q;
                }
                throw Error("best_query: no query attains the stored value");
        }

        // Adversary reply to q maximising the remaining length; no change
        // preferred on ties, then the lowest replacement input.
        AdversaryResponse
        best_response(const InputSet &s, int x, int c, int q)
        {
                const InputSet &yes_q = spec_.yes_set(q);
                const int stay = 1 + value(yes_q.contains(x) ? s & yes_q : s - yes_q, x, c);
                if (c <= 0)
                        return {};
                const int target = query_value(s, x, c, q);
                if (stay == target)
                        return {};
                std::optional<int> pick;
                s.for_each([&](int y) {
                        if (pick)
                                return;
                        InputSet next = yes_q.contains(y) ? s & yes_q : s - yes_q;
                        if (1 + value(next, y, c - 1) == target)
                                pick = y;
                });
                return {pick};
        }

        // Lowest input realising W(all, k).
        int
        best_initial_input(int k)
        {
                const int target = set_value(all_, k);
                for (int x = 0; x < spec_.input_count(); ++x)
                        if (value(all_, x, k) == target)
                                return x;
                return 0;
        }

        // One optimal line: lowest query, then no change, then lowest replacement.
        Transcript
        principal_variation(int k)
        {
                if (std::find(solved_budgets_.begin(), solved_budgets_.end(), k) == solved_budgets_.end())
                        throw Error("principal_variation: game value for k=" + std::to_string(k) +
                                    " has not been solved exactly");
                Transcript t;
                t.problem = spec_.name();
                t.k = k;
                t.initial_input = best_initial_input(k);
                GameState s = initial_state(spec_, k, t.initial_input);
                while (!is_certificate(s.consistent, spec_)) {
                        const int q = best_query(s.consistent, s.current, s.changes_left, &s);
                        const AdversaryResponse resp = best_response(s.consistent, s.current, s.changes_left, q);
                        s = apply_move(s, q, resp, spec_);
                        t.events.push_back(Event{q, resp.change, s.answer(q)});
                }
                t.final_state = s;
                return t;
        }

        bool
        undetermined(const InputSet &s, int q) const
        {
                InputSet yes = s & spec_.yes_set(q);
                return !yes.empty() && !(yes == s);
        }

        int
        undetermined_count(const InputSet &s) const
        {
                int u = 0;
                for (int q = 0; q < spec_.query_count(); ++q)
                        u += undetermined(s, q);
                return u;
        }

private:
        int
        clamp_budget(const InputSet &s, int c)
        {
                if (c <= 0)
                        return 0;
                return std::min(c, cached_undetermined(s));
        }

        int
        cached_undetermined(const InputSet &s)
        {
                detail::SetEntry *e = entry(s);
                if (!e)
                        return undetermined_count(s);
                int u = e->undetermined.load(std::memory_order_relaxed);
                if (u < 0) {
                        u = undetermined_count(s);
                        e->undetermined.store(static_cast<std::int8_t>(u), std::memory_order_relaxed);
                }
                return u;
        }

        detail::SetEntry *
        entry(const InputSet &s)
        {
                if (!options_.memoize)
                        return nullptr;
                if (detail::SetEntry *e = memo_.find(s))
                        return e;
                if (options_.memo_cap && memo_.size() >= options_.memo_cap)
                        throw LimitExceeded("memo cap of " + std::to_string(options_.memo_cap) + " entries reached");
                return memo_.find_or_insert(s, [&] {
                        return std::make_unique<detail::SetEntry>(s.size(), undetermined_count(s) + 1);
                });
        }

        std::optional<int>
        known_deterministic(const InputSet &s)
        {
                if (!options_.memoize)
                        return std::nullopt;
                detail::SetEntry *e = memo_.find(s);
                if (!e)
                        return std::nullopt;
                int v = e->deterministic.load(std::memory_order_relaxed);
                return v >= 0 ? std::optional<int>(v) : std::nullopt;
        }

        int
        root_value(int k)
        {
                if (is_certificate(all_, spec_))
                        return 0;
                const int threads = std::max(1, options_.threads);
                if (threads == 1)
                        return set_value(all_, k);
                // Independent root moves (initial inputs) are spread over workers.
                std::vector<int> values(spec_.input_count(), 0);
                std::atomic<int> next{0};
                std::exception_ptr failure;
                std::mutex failure_mutex;
                auto work = [&] {
                        try {
                                for (int x = next++; x < spec_.input_count(); x = next++)
                                        values[x] = value(all_, x, k);
                        } catch (...) {
                                std::lock_guard lock(failure_mutex);
                                if (!failure)
                                        failure = std::current_exception();
                                next = spec_.input_count();
                        }
                };
                {
                        std::vector<std::jthread> pool;
                        for (int t = 0; t < threads; ++t)
                                pool.emplace_back(work);
                }
                if (failure)
                        std::rethrow_exception(failure);
                return set_value(all_, k);
        }

        void
        arm_limits(std::chrono::steady_clock::time_point start)
        {
                node_limit_ = options_.node_cap ? nodes_expanded() + options_.node_cap : 0;
                if (options_.time_limit_s > 0)
                        deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                    std::chrono::duration<double>(options_.time_limit_s));
                else
                        deadline_.reset();
        }

        void
        disarm_limits()
        {
                node_limit_ = 0;
                deadline_.reset();
        }

        void
        expand()
        {
                const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
                if (node_limit_ && n > node_limit_)
                        throw LimitExceeded("node cap reached");
                if (deadline_ && (n & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_)
                        throw LimitExceeded("time limit reached");
        }

        ProblemSpec spec_;
        SolveOptions options_;
        InputSet all_;
        detail::MemoTable memo_;
        std::atomic<std::uint64_t> nodes_{0};
        std::uint64_t node_limit_ = 0;
        std::optional<std::chrono::steady_clock::time_point> deadline_;
        std::vector<int> solved_budgets_;
};

inline SolveResult
game_value(const ProblemSpec &spec, int k, SolveOptions options = {})
{
        Solver solver(spec, options);
        return solver.game_value(k);
}

// ---------------------------------------------------------------------------
// Optimal policies backed by a solver's memo table.

class OptimalQuestioner : public Questioner {
public:
        explicit OptimalQuestioner(std::shared_ptr<Solver> solver) : solver_(std::move(solver)) {}

        std::string name() const override { return "optimal"; }

        int
        next_query(const GameState &state) override
        {
                return solver_->best_query(state.consistent, state.current, state.changes_left, &state);
        }

        std::unique_ptr<Questioner> clone() const override { return std::make_unique<OptimalQuestioner>(*this); }

private:
        std::shared_ptr<Solver> solver_;
};

class OptimalAdversary : public Adversary {
public:
        explicit OptimalAdversary(std::shared_ptr<Solver> solver) : solver_(std::move(solver)) {}

        std::string name() const override { return "optimal"; }

        int initial_input(int k) override { return solver_->best_initial_input(k); }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if (!solver_->undetermined(state.consistent, q))
                        return {};
                return solver_->best_response(state.consistent, state.current, state.changes_left, q);
        }

        std::unique_ptr<Adversary> clone() const override { return std::make_unique<OptimalAdversary>(*this); }

private:
        std::shared_ptr<Solver> solver_;
};

// ---------------------------------------------------------------------------
// Best responses against a fixed agent.

namespace detail {

class SearchBudget {
public:
        explicit SearchBudget(const SolveOptions &o) : options_(o), start_(std::chrono::steady_clock::now()) {}

        void
        expand()
        {
                ++nodes_;
                if (options_.node_cap && nodes_ > options_.node_cap)
                        throw LimitExceeded("node cap reached");
                if (options_.time_limit_s > 0 && (nodes_ & 1023) == 0 &&
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() >
                            options_.time_limit_s)
                        throw LimitExceeded("time limit reached");
        }

        std::uint64_t nodes() const { return nodes_; }
        double
        elapsed_ms() const
        {
                return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        }

private:
        SolveOptions options_;
        std::chrono::steady_clock::time_point start_;
        std::uint64_t nodes_ = 0;
};

// Minimum length over all Questioner behaviours against a fixed Adversary.
// Every unasked query is a candidate (a history-dependent Adversary may react
// to determined ones too). Iterative deepening over a bounded search; the
// memo keeps exact values and lower bounds.
class AdversaryBestResponse {
public:
        AdversaryBestResponse(const ProblemSpec &spec, const SolveOptions &o) : spec_(spec), budget_(o) {}

        int
        run(const GameState &root, const Adversary &adv)
        {
                for (int limit = 0;; ++limit) {
                        int v = search(root, adv, limit);
                        if (v <= limit)
                                return v;
                }
        }

        SearchBudget &budget() { return budget_; }
        std::size_t memo_entries() const { return memo_.size(); }

private:
        struct Bound {
                int value;
                bool exact;
        };

        // Exact value if it is <= limit, otherwise a lower bound above limit.
        int
        search(const GameState &s, const Adversary &adv, int limit)
        {
                if (is_certificate(s.consistent, spec_))
                        return 0;
                if (limit <= 0)
                        return 1;
                const std::string key = pattern_key(s) + '#' + adv.state_key();
                if (auto it = memo_.find(key); it != memo_.end()) {
                        if (it->second.exact || it->second.value > limit)
                                return it->second.value;
                }
                budget_.expand();
                int best = INT_MAX;
                int lower = INT_MAX;
                for (int q = 0; q < spec_.query_count(); ++q) {
                        if (s.asked(q))
                                continue;
                        const int cap = std::min(limit, best - 1);
                        if (cap < 1)
                                break;
                        auto a = adv.clone();
                        const AdversaryResponse resp = a->respond(s, q);
                        GameState next;
                        try {
                                next = apply_move(s, q, resp, spec_);
                        } catch (const IllegalMove &e) {
                                throw Forfeit(adv.name(), e.what());
                        }
                        a->observe(next, Event{q, resp.change, next.answer(q)});
                        const int r = 1 + search(next, *a, cap - 1);
                        if (r <= cap)
                                best = r;
                        else
                                lower = std::min(lower, r);
                }
                if (best == INT_MAX && lower == INT_MAX)
                        throw Error(spec_.name() + ": no query left on a non-certificate set");
                Bound b = best <= limit ? Bound{best, true} : Bound{std::min(lower, best), false};
                memo_[key] = b;
                return b.value;
        }

        const ProblemSpec &spec_;
        SearchBudget budget_;
        std::unordered_map<std::string, Bound> memo_;
};

// Maximum length over all Adversary behaviours (any initial input, any legal
// change including a change to the current input) against a fixed Questioner.
class QuestionerBestResponse {
public:
        QuestionerBestResponse(const ProblemSpec &spec, const SolveOptions &o) : spec_(spec), budget_(o) {}

        int
        search(const GameState &s, const Questioner &qn)
        {
                if (is_certificate(s.consistent, spec_))
                        return 0;
                const std::string key = pattern_key(s) + '#' + qn.state_key();
                if (auto it = memo_.find(key); it != memo_.end())
                        return it->second;
                budget_.expand();
                if (s.count >= spec_.query_count())
                        throw Error("questioner best response: game did not terminate");
                auto asker = qn.clone();
                const int q = asker->next_query(s);
                if (q < 0 || q >= spec_.query_count() || s.asked(q))
                        throw Forfeit(qn.name(), "proposed illegal query " + std::to_string(q));
                int worst = step(s, *asker, q, AdversaryResponse{});
                if (s.changes_left > 0)
                        s.consistent.for_each(
                                [&](int y) { worst = std::max(worst, step(s, *asker, q, AdversaryResponse{y})); });
                memo_[key] = worst;
                return worst;
        }

        SearchBudget &budget() { return budget_; }
        std::size_t memo_entries() const { return memo_.size(); }

private:
        int
        step(const GameState &s, const Questioner &asker, int q, AdversaryResponse resp)
        {
                GameState next = apply_move(s, q, resp, spec_);
                auto child = asker.clone();
                child->observe(next, Event{q, resp.change, next.answer(q)});
                return 1 + search(next, *child);
        }

        const ProblemSpec &spec_;
        SearchBudget budget_;
        std::unordered_map<std::string, int> memo_;
};

} // namespace detail

// Guarantee proved by a fixed Adversary: a lower bound on D_k.
inline SolveResult
value_against_adversary(const ProblemSpec &spec, int k, const Adversary &adversary, SolveOptions options = {})
{
        auto adv = adversary.clone();
        const int x0 = adv->initial_input(k);
        GameState root;
        try {
                root = initial_state(spec, k, x0);
        } catch (const IllegalMove &e) {
                throw Forfeit(adversary.name(), e.what());
        }
        detail::AdversaryBestResponse br(spec, options);
        SolveResult r;
        try {
                r.value = r.lower = r.upper = br.run(root, *adv);
                r.complete = true;
        } catch (const LimitExceeded &) {
                r.complete = false;
                r.lower = 0;
                r.upper = spec.query_count();
        }
        r.nodes_expanded = br.budget().nodes();
        r.memo_entries = br.memo_entries();
        r.elapsed_ms = br.budget().elapsed_ms();
        return r;
}

// Guarantee proved by a fixed Questioner: an upper bound on D_k.
inline SolveResult
value_against_questioner(const ProblemSpec &spec, int k, const Questioner &questioner, SolveOptions options = {})
{
        detail::QuestionerBestResponse br(spec, options);
        SolveResult r;
        try {
                int worst = 0;
                for (int x = 0; x < spec.input_count(); ++x)
                        worst = std::max(worst, br.search(initial_state(spec, k, x), questioner));
                r.value = r.lower = r.upper = worst;
                r.complete = true;
        } catch (const LimitExceeded &) {
                r.complete = false;
                r.lower = 0;
                r.upper = spec.query_count();
        }
        r.nodes_expanded = br.budget().nodes();
        r.memo_entries = br.memo_entries();
        r.elapsed_ms = br.budget().elapsed_ms();
        return r;
}


// A line of play realizing value_against_questioner: the Adversary picks a
// worst initial input and worst responses, lowest index first on ties.
inline Transcript
worst_line_against_questioner(const ProblemSpec &spec, int k, const Questioner &questioner,
                              SolveOptions options = {})
{
        detail::QuestionerBestResponse br(spec, options);
        int x0 = 0, worst = -1;
        for (int x = 0; x < spec.input_count(); ++x) {
                const int v = br.search(initial_state(spec, k, x), questioner);
                if (v > worst) {
                        worst = v;
                        x0 = x;
                }
        }
        Transcript t;
        t.problem = spec.name();
        t.k = k;
        t.initial_input = x0;
        GameState s = initial_state(spec, k, x0);
        auto asker = questioner.clone();
        while (!is_certificate(s.consistent, spec)) {
                const int target = br.search(s, *asker);
                const int q = asker->clone()->next_query(s);
                std::vector<AdversaryResponse> options_here{AdversaryResponse{}};
                if (s.changes_left > 0)
                        s.consistent.for_each([&](int y) { options_here.push_back(AdversaryResponse{y}); });
                bool moved = false;
                for (const auto &resp : options_here) {
                        auto probe = asker->clone();
                        probe->next_query(s);
                        GameState next = apply_move(s, q, resp, spec);
                        Event e{q, resp.change, next.answer(q)};
                        probe->observe(next, e);
                        if (1 + br.search(next, *probe) != target)
                                continue;
                        asker->next_query(s);
                        asker->observe(next, e);
                        t.events.push_back(e);
                        s = std::move(next);
                        moved = true;
                        break;
                }
                if (!moved)
                        throw Error("worst_line_against_questioner: inconsistent memo");
        }
        t.final_state = s;
        return t;
}

// A shortest line against a fixed Adversary: the Questioner picks, lowest
// query first, a query attaining the best-response value.
inline Transcript
best_line_against_adversary(const ProblemSpec &spec, int k, const Adversary &adversary, SolveOptions options = {})
{
        auto adv = adversary.clone();
        Transcript t;
        t.problem = spec.name();
        t.k = k;
        t.initial_input = adv->initial_input(k);
        GameState s = initial_state(spec, k, t.initial_input);
        detail::AdversaryBestResponse br(spec, options);
        while (!is_certificate(s.consistent, spec)) {
                const int target = br.run(s, *adv);
                bool moved = false;
                for (int q = 0; q < spec.query_count() && !moved; ++q) {
                        if (s.asked(q))
                                continue;
                        auto a = adv->clone();
                        const AdversaryResponse resp = a->respond(s, q);
                        GameState next = apply_move(s, q, resp, spec);
                        Event e{q, resp.change, next.answer(q)};
                        a->observe(next, e);
                        if (1 + br.run(next, *a) != target)
                                continue;
                        adv = std::move(a);
                        t.events.push_back(e);
                        s = std::move(next);
                        moved = true;
                }
                if (!moved)
                        throw Error("best_line_against_adversary: inconsistent memo");
        }
        t.final_state = s;
        return t;
}

} // namespace kchange
