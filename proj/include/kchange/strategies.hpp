// Deterministic agents: the strategies used in the bounds for each problem
// family, a few exploratory ones, and generic solver-backed agents.
//
// All free choices resolve to the lowest label first.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "kchange/game.hpp"
#include "kchange/problems.hpp"
#include "kchange/solver.hpp"

namespace kchange {

// ---------------------------------------------------------------------------
// Helpers shared by the comparison families.

// Answered comparisons as (smaller, larger).
inline std::vector<std::pair<int, int>>
fixed_relations(const GameState &state, int n)
{
        const auto pairs = pair_list(n);
        std::vector<std::pair<int, int>> rel;
        for (int q = 0; q < static_cast<int>(pairs.size()); ++q) {
                if (!state.asked(q))
                        continue;
                auto [i, j] = pairs[q];
                if (state.answer(q) == Outcome::Yes)
                        rel.emplace_back(i, j);
                else
                        rel.emplace_back(j, i);
        }
        return rel;
}

// Linear extension of `less` restricted to `elems`, smallest label first
// among the available minima.
inline std::vector<int>
topological_order(const std::vector<int> &elems, const std::vector<std::pair<int, int>> &less)
{
        std::vector<int> out;
        std::vector<int> indeg(64, 0);
        std::vector<bool> in(64, false);
        for (int e : elems)
                in[e] = true;
        for (auto [a, b] : less)
                if (in[a] && in[b])
                        ++indeg[b];
        std::priority_queue<int, std::vector<int>, std::greater<>> ready;
        for (int e : elems)
                if (indeg[e] == 0)
                        ready.push(e);
        while (!ready.empty()) {
                int e = ready.top();
                ready.pop();
                out.push_back(e);
                for (auto [a, b] : less)
                        if (a == e && in[b] && --indeg[b] == 0)
                                ready.push(b);
        }
        if (out.size() != elems.size())
                throw Error("topological_order: cyclic relation");
        return out;
}

// Connected components of the comparison graph, each as a linear extension
// of its fixed answers; listed by lowest label.
inline std::vector<std::vector<int>>
relation_chains(int n, const std::vector<std::pair<int, int>> &less)
{
        std::vector<int> comp(n);
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int v) {
                while (comp[v] != v)
                        v = comp[v] = comp[comp[v]];
                return v;
        };
        for (auto [a, b] : less) {
                int ra = find(a), rb = find(b);
                if (ra != rb)
                        comp[std::max(ra, rb)] = std::min(ra, rb);
        }
        std::vector<std::vector<int>> chains;
        std::vector<int> slot(n, -1);
        for (int v = 0; v < n; ++v) {
                int r = find(v);
                if (slot[r] < 0) {
                        slot[r] = static_cast<int>(chains.size());
                        chains.emplace_back();
                }
                chains[slot[r]].push_back(v);
        }
        for (auto &c : chains)
                c = topological_order(c, less);
        return chains;
}

inline bool
order_separates(const std::vector<int> &order, const std::vector<std::pair<int, int>> &less)
{
        const auto pos = positions(order);
        for (auto [a, b] : less)
                if (pos[a] >= pos[b] || pos[b] - pos[a] == 1)
                        return false;
        return true;
}

// Merge the chains into one order that keeps every chain's order while
// pulling consecutive chain elements apart. The largest chain a_1<...<a_K
// is the frame; a largest-total subset of the other chains of at most K-1
// elements is threaded one per gap (a_i, a_{i+1}); each remaining chain
// c_1<...<c_m takes the top m gaps, c_i just below a_{K-m+i}. Elements
// sharing a gap are ordered by label. Orders are smallest first.
inline std::vector<int>
sorting_interleave_reorder(const std::vector<std::vector<int>> &chains)
{
        std::vector<int> all;
        for (const auto &c : chains)
                all.insert(all.end(), c.begin(), c.end());
        if (chains.empty())
                return all;
        std::size_t a_idx = 0;
        for (std::size_t i = 1; i < chains.size(); ++i)
                if (chains[i].size() > chains[a_idx].size())
                        a_idx = i;
        const auto &a = chains[a_idx];
        const int K = static_cast<int>(a.size());
        if (K == 1) {
                // nothing compared yet: every order is valid
                std::sort(all.begin(), all.end());
                return all;
        }
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < chains.size(); ++i)
                if (i != a_idx)
                        others.push_back(i);
        if (others.size() > 20)
                throw CapacityError("sorting_interleave_reorder: too many chains");
        std::uint32_t best_mask = 0;
        int best_total = 0;
        for (std::uint32_t m = 0; m < (1u << others.size()); ++m) {
                int total = 0;
                for (std::size_t i = 0; i < others.size(); ++i)
                        if ((m >> i) & 1u)
                                total += static_cast<int>(chains[others[i]].size());
                if (total <= K - 1 && total > best_total) {
                        best_total = total;
                        best_mask = m;
                }
        }
        // gaps[g] holds the elements placed just below a[g] (0-based).
        std::vector<std::vector<int>> gaps(K);
        int b = 1;
        for (std::size_t i = 0; i < others.size(); ++i)
                if ((best_mask >> i) & 1u)
                        for (int e : chains[others[i]])
                                gaps[b++].push_back(e);
        for (std::size_t i = 0; i < others.size(); ++i) {
                if ((best_mask >> i) & 1u)
                        continue;
                const auto &c = chains[others[i]];
                const int m = static_cast<int>(c.size());
                for (int j = 0; j < m; ++j)
                        gaps[K - m + j].push_back(c[j]);
        }
        std::vector<int> order;
        for (int g = 0; g < K; ++g) {
                std::sort(gaps[g].begin(), gaps[g].end());
                order.insert(order.end(), gaps[g].begin(), gaps[g].end());
                order.push_back(a[g]);
        }
        return order;
}

// Element status for the min/max family: out (A), smaller only (B), larger
// only (C), never compared (D).
struct MinMaxPartition {
        std::vector<int> a, b, c, d;
};

inline MinMaxPartition
minmax_partition(int n, const std::vector<std::pair<int, int>> &less)
{
        std::vector<bool> smaller(n, false), larger(n, false);
        for (auto [lo, hi] : less) {
                smaller[lo] = true;
                larger[hi] = true;
        }
        MinMaxPartition p;
        for (int v = 0; v < n; ++v) {
                if (smaller[v] && larger[v])
                        p.a.push_back(v);
                else if (smaller[v])
                        p.b.push_back(v);
                else if (larger[v])
                        p.c.push_back(v);
                else
                        p.d.push_back(v);
        }
        return p;
}

// Blocks B < A < D < C. B, C and D keep their relative order from `prior`;
// A follows the fixed answers, lowest label first.
inline std::vector<int>
minmax_reorder(const MinMaxPartition &p, const std::vector<int> &prior, const std::vector<std::pair<int, int>> &less)
{
        const auto pos = positions(prior);
        auto by_prior = [&](std::vector<int> v) {
                std::sort(v.begin(), v.end(), [&](int x, int y) { return pos[x] < pos[y]; });
                return v;
        };
        std::vector<int> order = by_prior(p.b);
        for (int v : topological_order(p.a, less))
                order.push_back(v);
        for (int v : by_prior(p.d))
                order.push_back(v);
        for (int v : by_prior(p.c))
                order.push_back(v);
        return order;
}

namespace detail {

inline Family
family_of(const ProblemSpec &spec)
{
        auto f = parse_family(spec.params().family);
        if (!f)
                throw ConfigError(spec.name() + ": agent needs a built problem family");
        return *f;
}

inline void
require_family(const ProblemSpec &spec, std::initializer_list<Family> allowed, const std::string &agent)
{
        const Family f = family_of(spec);
        for (Family a : allowed)
                if (a == f)
                        return;
        throw ConfigError("agent '" + agent + "' does not play " + family_name(f));
}

inline bool
undetermined(const ProblemSpec &spec, const GameState &s, int q)
{
        return !s.asked(q) && !(s.consistent & spec.yes_set(q)).empty() &&
               !(s.consistent - spec.yes_set(q)).empty();
}

inline int
first_undetermined(const ProblemSpec &spec, const GameState &s)
{
        for (int q = 0; q < spec.query_count(); ++q)
                if (undetermined(spec, s, q))
                        return q;
        throw Error(spec.name() + ": no undetermined query left");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Generic agents.

class StaticAdversary : public Adversary {
public:
        explicit StaticAdversary(int input = 0) : input_(input) {}

        std::string name() const override { return "static"; }
        int initial_input(int) override { return input_; }
        AdversaryResponse respond(const GameState &, int) override { return {}; }
        std::unique_ptr<Adversary> clone() const override { return std::make_unique<StaticAdversary>(*this); }

private:
        int input_;
};

// While changes remain, answer so the unrestricted value of the consistent
// set stays as large as possible, changing input when the current one gives
// the wrong answer; then answer statically. D drops by at most one per
// query, which forces min{k+1, D} queries.
class StubbornAdversary : public Adversary {
public:
        explicit StubbornAdversary(std::shared_ptr<Solver> solver) : solver_(std::move(solver)) {}

        std::string name() const override { return "stubborn"; }
        int initial_input(int) override { return 0; }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if (state.changes_left < 1)
                        return {};
                const ProblemSpec &spec = solver_->spec();
                const Outcome mine = spec.oracle(state.current, q);
                const Outcome other = mine == Outcome::Yes ? Outcome::No : Outcome::Yes;
                const InputSet keep = restrict(state.consistent, q, mine, spec);
                const InputSet flip = restrict(state.consistent, q, other, spec);
                if (flip.empty() || solver_->deterministic_value(flip) <= solver_->deterministic_value(keep))
                        return {};
                return {flip.first()};
        }

        std::unique_ptr<Adversary> clone() const override { return std::make_unique<StubbornAdversary>(*this); }

private:
        std::shared_ptr<Solver> solver_;
};

// Plays the optimal policy for budget j_1 until the Adversary has changed
// j_1+1 times, then restarts with j_2, and so on; past the last segment it
// plays for the changes actually left.
class ComposeQuestioner : public Questioner {
public:
        ComposeQuestioner(std::shared_ptr<Solver> solver, std::vector<int> segments)
                : solver_(std::move(solver)), segments_(std::move(segments))
        {
                if (segments_.empty())
                        throw ConfigError("compose: needs at least one segment");
                for (int j : segments_)
                        if (j < 0)
                                throw ConfigError("compose: segment budgets must be non-negative");
        }

        std::string
        name() const override
        {
                std::string s = "compose:";
                for (std::size_t i = 0; i < segments_.size(); ++i)
                        s += (i ? "," : "") + std::to_string(segments_[i]);
                return s;
        }

        int
        next_query(const GameState &state) override
        {
                int c = state.changes_left;
                if (segment_ < segments_.size())
                        c = std::min(c, segments_[segment_] - seen_);
                return solver_->best_query(state.consistent, state.current, c, &state);
        }

        void
        observe(const GameState &, const Event &e) override
        {
                if (!e.change || segment_ >= segments_.size())
                        return;
                if (++seen_ > segments_[segment_]) {
                        ++segment_;
                        seen_ = 0;
                }
        }

        std::string state_key() const override { return std::to_string(segment_) + "/" + std::to_string(seen_); }
        std::unique_ptr<Questioner> clone() const override { return std::make_unique<ComposeQuestioner>(*this); }

private:
        std::shared_ptr<Solver> solver_;
        std::vector<int> segments_;
        std::size_t segment_ = 0;
        int seen_ = 0;
};

// ---------------------------------------------------------------------------
// Search and group testing.

class SingletonQuestioner : public Questioner {
public:
        explicit SingletonQuestioner(const ProblemSpec &spec)
        {
                detail::require_family(spec, {Family::Search}, "singleton");
        }

        std::string name() const override { return "singleton"; }

        int
        next_query(const GameState &state) override
        {
                // query index is the subset mask; input x is element x
                const int q = 1 << state.current;
                if (state.asked(q))
                        throw Error("singleton: current element already asked");
                return q;
        }

        std::unique_ptr<Questioner> clone() const override { return std::make_unique<SingletonQuestioner>(*this); }
};

class HalvingQuestioner : public Questioner {
public:
        explicit HalvingQuestioner(const ProblemSpec &spec) : spec_(&spec)
        {
                detail::require_family(spec, {Family::Search}, "halving");
        }

        std::string name() const override { return "halving"; }

        int
        next_query(const GameState &state) override
        {
                const int want = (state.consistent.size() + 1) / 2;
                for (int q = 0; q < spec_->query_count(); ++q)
                        if (!state.asked(q) && (state.consistent & spec_->yes_set(q)).size() == want)
                                return q;
                return detail::first_undetermined(*spec_, state);
        }

        std::unique_ptr<Questioner> clone() const override { return std::make_unique<HalvingQuestioner>(*this); }

private:
        const ProblemSpec *spec_;
};

// At most d defectives. For the first k queries keep a region R (initially
// every element) that holds all defectives: answer YES iff the query covers
// at least half of R, moving the defectives into the chosen side when the
// current input disagrees. Afterwards answer statically.
class HalfSplitAdversary : public Adversary {
public:
        explicit HalfSplitAdversary(const ProblemSpec &spec) : spec_(&spec)
        {
                detail::require_family(spec, {Family::GtAtMost}, "half-split");
                n_ = spec.params().n;
                d_ = spec.params().d;
                masks_ = defective_sets(n_, d_, false);
                region_ = n_ == 32 ? ~0u : (1u << n_) - 1;
        }

        std::string name() const override { return "half-split"; }

        int
        initial_input(int k) override
        {
                k_ = k;
                return index_of(lowest(region_, d_));
        }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if (state.count >= k_)
                        return {};
                const auto a = static_cast<std::uint32_t>(q);
                const std::uint32_t inside = region_ & a;
                const bool yes = 2 * std::popcount(inside) >= std::popcount(region_);
                const std::uint32_t target = yes ? inside : region_ & ~a;
                const std::uint32_t x = masks_[state.current];
                const bool fits = (x & ~target) == 0 && ((x & a) != 0) == yes;
                if (fits || state.changes_left < 1)
                        return {};
                const int next = index_of(lowest(target, d_));
                if (!state.consistent.contains(next))
                        return {};
                return {next};
        }

        void
        observe(const GameState &after, const Event &e) override
        {
                if (after.count > k_)
                        return;
                const auto a = static_cast<std::uint32_t>(e.query);
                region_ = e.outcome == Outcome::Yes ? region_ & a : region_ & ~a;
        }

        std::string state_key() const override { return std::to_string(region_); }
        std::unique_ptr<Adversary> clone() const override { return std::make_unique<HalfSplitAdversary>(*this); }

        std::uint32_t region() const { return region_; }

private:
        static std::uint32_t
        lowest(std::uint32_t from, int count)
        {
                std::uint32_t out = 0;
                for (int i = 0; i < 32 && count > 0; ++i)
                        if ((from >> i) & 1u) {
                                out |= 1u << i;
                                --count;
                        }
                return out;
        }

        int
        index_of(std::uint32_t m) const
        {
                auto it = std::lower_bound(masks_.begin(), masks_.end(), m);
                if (it == masks_.end() || *it != m)
                        throw Error("half-split: not an input");
                return static_cast<int>(it - masks_.begin());
        }

        const ProblemSpec *spec_;
        int n_ = 0, d_ = 0, k_ = 0;
        std::vector<std::uint32_t> masks_;
        std::uint32_t region_ = 0;
};

// ---------------------------------------------------------------------------
// Sorting.

// Asks the lowest unasked adjacent pair of the current order. Before any
// change this walks the order bottom-up; after a change the unasked adjacent
// pairs of the new order are exactly the repair queries for each gap of the
// chain already known.
class ChainRepairQuestioner : public Questioner {
public:
        explicit ChainRepairQuestioner(const ProblemSpec &spec) : n_(spec.params().n)
        {
                detail::require_family(spec, {Family::Sorting}, "chain-repair");
        }

        std::string name() const override { return "chain-repair"; }

        int
        next_query(const GameState &state) override
        {
                const auto order = order_at(n_, state.current);
                for (int i = 0; i + 1 < n_; ++i) {
                        const int q = pair_index(n_, std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]));
                        if (!state.asked(q))
                                return q;
                }
                throw Error("chain-repair: every adjacent pair is known");
        }

        std::unique_ptr<Questioner> clone() const override { return std::make_unique<ChainRepairQuestioner>(*this); }

private:
        int n_;
};

// Exploratory: the unasked adjacent pair of the current order with the
// smallest label pair.
class AdjacentScanQuestioner : public Questioner {
public:
        explicit AdjacentScanQuestioner(const ProblemSpec &spec) : n_(spec.params().n)
        {
                detail::require_family(spec, {Family::Sorting}, "adjacent-scan");
        }

        std::string name() const override { return "adjacent-scan"; }

        int
        next_query(const GameState &state) override
        {
                const auto order = order_at(n_, state.current);
                int best = -1;
                for (int i = 0; i + 1 < n_; ++i) {
                        const int q = pair_index(n_, std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1]));
                        if (!state.asked(q) && (best < 0 || q < best))
                                best = q;
                }
                if (best < 0)
                        throw Error("adjacent-scan: every adjacent pair is known");
                return best;
        }

        std::unique_ptr<Questioner> clone() const override
        {
                return std::make_unique<AdjacentScanQuestioner>(*this);
        }

private:
        int n_;
};

// Answers the first ceil(n/2)-1 queries truthfully, then (at the next
// query, if a change is left) switches to the interleaved order in which no
// compared pair is adjacent.
class InterleaveAdversary : public Adversary {
public:
        explicit InterleaveAdversary(const ProblemSpec &spec) : n_(spec.params().n)
        {
                detail::require_family(spec, {Family::Sorting}, "interleave");
        }

        std::string name() const override { return "interleave"; }
        int initial_input(int) override { return 0; }

        AdversaryResponse
        respond(const GameState &state, int) override
        {
                if (state.count != (n_ + 1) / 2 - 1 || state.changes_left < 1)
                        return {};
                const auto rel = fixed_relations(state, n_);
                const auto order = sorting_interleave_reorder(relation_chains(n_, rel));
                if (!order_separates(order, rel))
                        return {};
                const int x = order_rank(order);
                if (x == state.current)
                        return {};
                return {x};
        }

        std::unique_ptr<Adversary> clone() const override { return std::make_unique<InterleaveAdversary>(*this); }

private:
        int n_;
};

// Exploratory: whenever the pending pair is adjacent and a change is left,
// move to an order where the compared elements form one lowest-label chain
// with the untouched elements spread evenly through its gaps, provided no
// compared or pending pair ends up adjacent; the interleaved order is the
// fallback.
class BalancedAdversary : public Adversary {
public:
        explicit BalancedAdversary(const ProblemSpec &spec) : n_(spec.params().n)
        {
                detail::require_family(spec, {Family::Sorting}, "balanced");
        }

        std::string name() const override { return "balanced"; }
        int initial_input(int) override { return 0; }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if (state.changes_left < 1)
                        return {};
                const auto [i, j] = pair_list(n_)[q];
                const auto pos = positions(order_at(n_, state.current));
                if (std::abs(pos[i] - pos[j]) != 1)
                        return {};
                auto rel = fixed_relations(state, n_);
                auto guard = rel;
                // the pending pair must end up apart too; orient it as it stands
                guard.emplace_back(pos[i] < pos[j] ? i : j, pos[i] < pos[j] ? j : i);
                for (const auto &order : {balanced(rel), sorting_interleave_reorder(relation_chains(n_, rel))}) {
                        if (!order_separates(order, guard))
                                continue;
                        const int x = order_rank(order);
                        if (x != state.current && state.consistent.contains(x))
                                return {x};
                }
                return {};
        }

        std::unique_ptr<Adversary> clone() const override { return std::make_unique<BalancedAdversary>(*this); }

private:
        std::vector<int>
        balanced(const std::vector<std::pair<int, int>> &rel) const
        {
                std::vector<bool> touched(n_, false);
                for (auto [a, b] : rel)
                        touched[a] = touched[b] = true;
                std::vector<int> t, u;
                for (int v = 0; v < n_; ++v)
                        (touched[v] ? t : u).push_back(v);
                t = topological_order(t, rel);
                const std::size_t slots = t.size() + 1;
                std::vector<int> order;
                std::size_t next = 0;
                for (std::size_t s = 0; s < slots; ++s) {
                        const std::size_t take = u.size() / slots + (s < u.size() % slots ? 1 : 0);
                        for (std::size_t r = 0; r < take; ++r)
                                order.push_back(u[next++]);
                        if (s < t.size())
                                order.push_back(t[s]);
                }
                return order;
        }

        int n_;
};

// ---------------------------------------------------------------------------
// Minimum and maximum.

// Candidates are the elements not yet out (for max only: never smaller).
// Walk them in the current order asking consecutive undetermined pairs;
// after a change the walk simply restarts on the surviving candidates.
class ChainQuestioner : public Questioner {
public:
        explicit ChainQuestioner(const ProblemSpec &spec) : spec_(&spec), n_(spec.params().n)
        {
                detail::require_family(spec, {Family::MinMax, Family::MaxOnly}, "chain");
                max_only_ = detail::family_of(spec) == Family::MaxOnly;
        }

        std::string name() const override { return "chain"; }

        int
        next_query(const GameState &state) override
        {
                const auto rel = fixed_relations(state, n_);
                std::vector<bool> smaller(n_, false), larger(n_, false);
                for (auto [lo, hi] : rel) {
                        smaller[lo] = true;
                        larger[hi] = true;
                }
                std::vector<int> cand;
                for (int v : order_at(n_, state.current))
                        if (max_only_ ? !smaller[v] : !(smaller[v] && larger[v]))
                                cand.push_back(v);
                for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
                        const int q = pair_index(n_, std::min(cand[i], cand[i + 1]), std::max(cand[i], cand[i + 1]));
                        if (detail::undetermined(*spec_, state, q))
                                return q;
                }
                return detail::first_undetermined(*spec_, state);
        }

        std::unique_ptr<Questioner> clone() const override { return std::make_unique<ChainQuestioner>(*this); }

private:
        const ProblemSpec *spec_;
        int n_;
        bool max_only_ = false;
};

// First phase (until min{k, ceil(n/2)} answers that put nobody out): pick an
// answer that keeps every element in, preferring the current input's, and
// move to the block order B < A < D < C if it differs from the current one.
// When every consistent answer puts an element out, or in the second phase,
// answer statically.
class OutAvoidAdversary : public Adversary {
public:
        explicit OutAvoidAdversary(const ProblemSpec &spec) : spec_(&spec), n_(spec.params().n)
        {
                detail::require_family(spec, {Family::MinMax}, "out-avoid");
        }

        std::string name() const override { return "out-avoid"; }

        int
        initial_input(int k) override
        {
                phase_len_ = std::min(k, (n_ + 1) / 2);
                return 0;
        }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if (safe_answers_ >= phase_len_)
                        return {};
                auto rel = fixed_relations(state, n_);
                std::vector<bool> smaller(n_, false), larger(n_, false);
                for (auto [lo, hi] : rel) {
                        smaller[lo] = true;
                        larger[hi] = true;
                }
                const auto [i, j] = pair_list(n_)[q];
                const Outcome mine = spec_->oracle(state.current, q);
                for (Outcome o : {mine, mine == Outcome::Yes ? Outcome::No : Outcome::Yes}) {
                        const int lo = o == Outcome::Yes ? i : j;
                        const int hi = o == Outcome::Yes ? j : i;
                        if (larger[lo] || smaller[hi] || restrict(state.consistent, q, o, *spec_).empty())
                                continue;
                        ++safe_answers_;
                        rel.emplace_back(lo, hi);
                        const auto prior = order_at(n_, state.current);
                        const auto order = minmax_reorder(minmax_partition(n_, rel), prior, rel);
                        const int x = order_rank(order);
                        if (x == state.current || state.changes_left < 1 || !state.consistent.contains(x))
                                return {};
                        return {x};
                }
                return {};
        }

        std::string state_key() const override { return std::to_string(safe_answers_); }
        std::unique_ptr<Adversary> clone() const override { return std::make_unique<OutAvoidAdversary>(*this); }

private:
        const ProblemSpec *spec_;
        int n_;
        int phase_len_ = 0;
        int safe_answers_ = 0;
};

// ---------------------------------------------------------------------------
// Connectivity.

// Start from r disjoint balanced cliques (r = k+2 unless fixed). Edges are
// answered YES; a non-edge is answered NO unless that would already certify
// a disconnected graph, in which case (changes permitting) the pair becomes
// an edge and the answer is YES.
class TuranComplementAdversary : public Adversary {
public:
        TuranComplementAdversary(const ProblemSpec &spec, int parts = 0, std::string name = "turan-complement")
                : spec_(&spec), n_(spec.params().n), parts_(parts), name_(std::move(name))
        {
                detail::require_family(spec, {Family::Connectivity}, name_);
        }

        std::string name() const override { return name_; }

        int
        initial_input(int k) override
        {
                const int r = parts_ > 0 ? parts_ : k + 2;
                return static_cast<int>(edge_mask(n_, turan_complement(n_, r)));
        }

        AdversaryResponse
        respond(const GameState &state, int q) override
        {
                if ((state.current >> q) & 1)
                        return {};
                if (state.changes_left < 1 || !is_certificate(restrict(state.consistent, q, Outcome::No, *spec_), *spec_))
                        return {};
                return {state.current | (1 << q)};
        }

        std::unique_ptr<Adversary> clone() const override
        {
                return std::make_unique<TuranComplementAdversary>(*this);
        }

private:
        const ProblemSpec *spec_;
        int n_;
        int parts_;
        std::string name_;
};

// Phase 1: grow a spanning forest of the current graph from known YES edges,
// lexicographically first joining edge each time. Phase 2 (current graph
// disconnected): take the smallest component (ties: lowest vertex) with an
// unasked pair leaving it and ask the first such pair.
class SpanningForestQuestioner : public Questioner {
public:
        explicit SpanningForestQuestioner(const ProblemSpec &spec) : n_(spec.params().n)
        {
                detail::require_family(spec, {Family::Connectivity}, "spanning-forest");
        }

        std::string name() const override { return "spanning-forest"; }

        int
        next_query(const GameState &state) override
        {
                const auto pairs = pair_list(n_);
                const int m = static_cast<int>(pairs.size());
                EdgeMask known = 0;
                for (int q = 0; q < m; ++q)
                        if (state.asked(q) && state.answer(q) == Outcome::Yes)
                                known |= EdgeMask{1} << q;
                const auto g = static_cast<EdgeMask>(state.current);
                const auto kc = components(known, n_);
                const auto gc = components(g, n_);
                for (int q = 0; q < m; ++q) {
                        auto [u, v] = pairs[q];
                        if (((g >> q) & 1u) && !state.asked(q) && kc[u] != kc[v])
                                return q;
                }
                std::vector<int> size(n_, 0);
                for (int v = 0; v < n_; ++v)
                        ++size[gc[v]];
                int best = -1, best_q = -1;
                for (int c = 0; c < n_; ++c) {
                        if (size[c] == 0 || (best >= 0 && size[c] >= size[best]))
                                continue;
                        for (int q = 0; q < m; ++q) {
                                auto [u, v] = pairs[q];
                                if (!state.asked(q) && (gc[u] == c) != (gc[v] == c)) {
                                        best = c;
                                        best_q = q;
                                        break;
                                }
                        }
                }
                if (best_q < 0)
                        throw Error("spanning-forest: nothing left to ask");
                return best_q;
        }

        std::unique_ptr<Questioner> clone() const override
        {
                return std::make_unique<SpanningForestQuestioner>(*this);
        }

private:
        int n_;
};

// ---------------------------------------------------------------------------
// Registry.

inline const std::vector<std::string> &
questioner_names()
{
        static const std::vector<std::string> names = {"optimal", "singleton",     "halving",        "chain-repair",
                                                       "chain",   "adjacent-scan", "spanning-forest", "compose:j1,j2,..."};
        return names;
}

inline const std::vector<std::string> &
adversary_names()
{
        static const std::vector<std::string> names = {"optimal",    "static",    "stubborn",
                                                       "half-split", "interleave", "balanced",
                                                       "out-avoid",  "turan-complement", "no-unless-disconnect"};
        return names;
}

namespace detail {

inline std::shared_ptr<Solver>
ensure_solver(const ProblemSpec &spec, std::shared_ptr<Solver> solver)
{
        return solver ? solver : std::make_shared<Solver>(spec);
}

inline std::vector<int>
parse_segments(const std::string &list)
{
        std::vector<int> out;
        std::size_t start = 0;
        while (start <= list.size()) {
                const std::size_t end = std::min(list.find(',', start), list.size());
                const std::string tok = list.substr(start, end - start);
                std::size_t used = 0;
                int v = -1;
                try {
                        v = std::stoi(tok, &used);
                } catch (const std::exception &) {
                        used = 0;
                }
                if (tok.empty() || used != tok.size() || v < 0)
                        throw ConfigError("compose: bad segment '" + tok + "'");
                out.push_back(v);
                start = end + 1;
        }
        return out;
}

} // namespace detail

// `spec` must outlive the agent. `solver` (optional) is shared by the
// solver-backed agents; one is built on demand otherwise.
inline std::unique_ptr<Questioner>
make_questioner(const std::string &name, const ProblemSpec &spec, std::shared_ptr<Solver> solver = nullptr)
{
        if (name == "optimal")
                return std::make_unique<OptimalQuestioner>(detail::ensure_solver(spec, solver));
        if (name.rfind("compose:", 0) == 0)
                return std::make_unique<ComposeQuestioner>(detail::ensure_solver(spec, solver),
                                                           detail::parse_segments(name.substr(8)));
        if (name == "singleton")
                return std::make_unique<SingletonQuestioner>(spec);
        if (name == "halving")
                return std::make_unique<HalvingQuestioner>(spec);
        if (name == "chain-repair")
                return std::make_unique<ChainRepairQuestioner>(spec);
        if (name == "adjacent-scan")
                return std::make_unique<AdjacentScanQuestioner>(spec);
        if (name == "chain")
                return std::make_unique<ChainQuestioner>(spec);
        if (name == "spanning-forest")
                return std::make_unique<SpanningForestQuestioner>(spec);
        throw ConfigError("unknown questioner '" + name + "'");
}

inline std::unique_ptr<Adversary>
make_adversary(const std::string &name, const ProblemSpec &spec, std::shared_ptr<Solver> solver = nullptr)
{
        if (name == "optimal")
                return std::make_unique<OptimalAdversary>(detail::ensure_solver(spec, solver));
        if (name == "stubborn")
                return std::make_unique<StubbornAdversary>(detail::ensure_solver(spec, solver));
        if (name == "static")
                return std::make_unique<StaticAdversary>();
        if (name == "half-split")
                return std::make_unique<HalfSplitAdversary>(spec);
        if (name == "interleave")
                return std::make_unique<InterleaveAdversary>(spec);
        if (name == "balanced")
                return std::make_unique<BalancedAdversary>(spec);
        if (name == "out-avoid")
                return std::make_unique<OutAvoidAdversary>(spec);
        if (name == "turan-complement")
                return std::make_unique<TuranComplementAdversary>(spec);
        if (name == "no-unless-disconnect")
                return std::make_unique<TuranComplementAdversary>(spec, spec.params().n, "no-unless-disconnect");
        throw ConfigError("unknown adversary '" + name + "'");
}

} // namespace kchange
