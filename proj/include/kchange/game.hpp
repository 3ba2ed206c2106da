// Rules of the k-change query game.
//
// The Adversary commits to an input but may replace it, at most k times, by
// another input consistent with every answer given so far (the "fixed"
// answers). A change happens after the pending query is seen and before it is
// answered; the answer itself is then forced by the oracle on the new input.
// The Questioner sees everything, including the current input, and the game
// ends as soon as every consistent input has the same target value.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kchange/errors.hpp"
#include "kchange/input_set.hpp"

namespace kchange {

enum class Outcome : std::uint8_t { No = 0, Yes = 1 };

inline const char *
to_string(Outcome o)
{
        return o == Outcome::Yes ? "YES" : "NO";
}

// Family tag carried by built problems so strategies can decode inputs.
struct ProblemParams {
        std::string family; // empty for hand-built problems
        int n = 0;
        int d = 0;
};

class ProblemSpec {
public:
        using Oracle = std::function<bool(int input, int query)>;

        ProblemSpec(std::string name, std::vector<std::string> inputs, std::vector<std::string> queries,
                    const Oracle &oracle, std::vector<int> target, ProblemParams params = {})
                : name_(std::move(name)), inputs_(std::move(inputs)), queries_(std::move(queries)),
                  target_(std::move(target)), params_(std::move(params))
        {
                const int n = static_cast<int>(inputs_.size());
                if (n > kMaxInputs)
                        throw CapacityError(name_ + ": " + std::to_string(n) + " inputs exceeds capacity " +
                                            std::to_string(kMaxInputs));
                if (static_cast<int>(target_.size()) != n)
                        throw MalformedProblem(name_ + ": target table size differs from input count");
                yes_.reserve(queries_.size());
                for (int q = 0; q < query_count(); ++q) {
                        InputSet s(n);
                        for (int x = 0; x < n; ++x)
                                if (oracle(x, q))
                                        s.insert(x);
                        yes_.push_back(s);
                }
                build_classes();
        }

        const std::string &name() const { return name_; }
        const ProblemParams &params() const { return params_; }
        int input_count() const { return static_cast<int>(inputs_.size()); }
        int query_count() const { return static_cast<int>(queries_.size()); }
        const std::string &input_label(int x) const { return inputs_.at(x); }
        const std::string &query_label(int q) const { return queries_.at(q); }

        Outcome
        oracle(int x, int q) const
        {
                return yes_[q].contains(x) ? Outcome::Yes : Outcome::No;
        }

        // Inputs answering YES to q.
        const InputSet &yes_set(int q) const { return yes_[q]; }

        int target(int x) const { return target_.at(x); }

        // Inputs sharing x's target value.
        const InputSet &target_class(int x) const { return classes_[class_of_[x]]; }

        InputSet all_inputs() const { return InputSet::full(input_count()); }

private:
        void
        build_classes()
        {
                std::vector<int> values;
                class_of_.resize(target_.size());
                for (std::size_t x = 0; x < target_.size(); ++x) {
                        auto it = std::find(values.begin(), values.end(), target_[x]);
                        int c = static_cast<int>(it - values.begin());
                        if (it == values.end()) {
                                values.push_back(target_[x]);
                                classes_.emplace_back(input_count());
                        }
                        class_of_[x] = c;
                        classes_[c].insert(static_cast<int>(x));
                }
        }

        std::string name_;
        std::vector<std::string> inputs_;
        std::vector<std::string> queries_;
        std::vector<int> target_;
        ProblemParams params_;
        std::vector<InputSet> yes_;
        std::vector<InputSet> classes_;
        std::vector<int> class_of_;
};

struct ValidationReport {
        enum class Status { Valid, Malformed, NotSeparating };

        Status status = Status::Valid;
        std::string message;
        // Inputs with identical answers on every query but different targets.
        std::optional<std::pair<int, int>> witness;

        bool ok() const { return status == Status::Valid; }
};

inline ValidationReport
validate_problem(const ProblemSpec &spec)
{
        ValidationReport r;
        if (spec.input_count() < 1 || spec.query_count() < 1) {
                r.status = ValidationReport::Status::Malformed;
                r.message = spec.name() + ": empty " + (spec.input_count() < 1 ? "input" : "query") + " set";
                return r;
        }
        // Group inputs by answer vector; any group with two targets breaks separation.
        const int n = spec.input_count();
        std::vector<int> representative(n, -1);
        for (int x = 0; x < n; ++x) {
                for (int y = 0; y < x; ++y) {
                        if (representative[y] != y)
                                continue;
                        bool same = true;
                        for (int q = 0; q < spec.query_count() && same; ++q)
                                same = spec.oracle(x, q) == spec.oracle(y, q);
                        if (!same)
                                continue;
                        representative[x] = y;
                        break;
                }
                if (representative[x] < 0)
                        representative[x] = x;
        }
        for (int x = 0; x < n; ++x) {
                int y = representative[x];
                if (spec.target(x) != spec.target(y)) {
                        r.status = ValidationReport::Status::NotSeparating;
                        r.witness = std::make_pair(y, x);
                        r.message = spec.name() + ": inputs " + spec.input_label(y) + " and " +
                                    spec.input_label(x) + " agree on every query but differ in target";
                        return r;
                }
        }
        return r;
}

inline InputSet
restrict(const InputSet &consistent, int q, Outcome o, const ProblemSpec &spec)
{
        return o == Outcome::Yes ? consistent & spec.yes_set(q) : consistent - spec.yes_set(q);
}

inline bool
is_certificate(const InputSet &consistent, const ProblemSpec &spec)
{
        const int x = consistent.first();
        if (x < 0)
                throw Error("is_certificate: empty consistent set");
        return consistent.is_subset_of(spec.target_class(x));
}

struct GameState {
        InputSet consistent;
        int current = 0;
        int changes_left = 0;
        // Per query: -1 unasked, otherwise the fixed Outcome.
        std::vector<std::int8_t> answers;
        int count = 0;

        bool asked(int q) const { return answers[q] >= 0; }
        Outcome answer(int q) const { return static_cast<Outcome>(answers[q]); }

        friend bool operator==(const GameState &, const GameState &) = default;
};

inline GameState
initial_state(const ProblemSpec &spec, int k, int initial_input)
{
        if (k < 0)
                throw Error("negative change budget");
        if (initial_input < 0 || initial_input >= spec.input_count())
                throw IllegalMove("initial input " + std::to_string(initial_input) + " out of range");
        GameState s;
        s.consistent = spec.all_inputs();
        s.current = initial_input;
        s.changes_left = k;
        s.answers.assign(spec.query_count(), -1);
        return s;
}

struct AdversaryResponse {
        std::optional<int> change;
};

struct Event {
        int query = 0;
        std::optional<int> change;
        Outcome outcome = Outcome::No;

        friend bool operator==(const Event &, const Event &) = default;
};

inline GameState
apply_move(const GameState &state, int q, const AdversaryResponse &resp, const ProblemSpec &spec)
{
        if (q < 0 || q >= spec.query_count())
                throw IllegalMove("query " + std::to_string(q) + " out of range");
        if (state.asked(q))
                throw RefusedQuery("query " + spec.query_label(q) + " was already answered");
        GameState next = state;
        if (resp.change) {
                const int x = *resp.change;
                if (state.changes_left < 1)
                        throw IllegalMove("change requested with no changes left");
                if (x < 0 || x >= spec.input_count() || !state.consistent.contains(x))
                        throw IllegalMove("change target " + std::to_string(x) +
                                          " is inconsistent with the fixed answers");
                next.current = x;
                next.changes_left -= 1;
        }
        const Outcome o = spec.oracle(next.current, q);
        next.answers[q] = static_cast<std::int8_t>(o);
        next.consistent = restrict(state.consistent, q, o, spec);
        next.count += 1;
        return next;
}

struct Transcript {
        std::string problem;
        int k = 0;
        int initial_input = 0;
        std::vector<Event> events;
        GameState final_state;

        int length() const { return static_cast<int>(events.size()); }

        int
        changes() const
        {
                int c = 0;
                for (const auto &e : events)
                        c += e.change.has_value();
                return c;
        }
};

inline GameState
replay(const ProblemSpec &spec, const Transcript &t)
{
        GameState s = initial_state(spec, t.k, t.initial_input);
        for (const auto &e : t.events) {
                s = apply_move(s, e.query, AdversaryResponse{e.change}, spec);
                if (s.answer(e.query) != e.outcome)
                        throw Error("replay: recorded outcome disagrees with the oracle");
        }
        return s;
}

// Agents are single-owner, deterministic and cloneable. state_key() must
// capture all internal memory not derivable from the observed GameState; the
// best-response searches use it for memoisation.
class Agent {
public:
        virtual ~Agent() = default;
        virtual std::string name() const = 0;
        virtual void observe(const GameState & /*after*/, const Event & /*event*/) {}
        virtual std::string state_key() const { return {}; }
};

class Questioner : public Agent {
public:
        virtual int next_query(const GameState &state) = 0;
        virtual std::unique_ptr<Questioner> clone() const = 0;
};

class Adversary : public Agent {
public:
        virtual int initial_input(int k) = 0;
        virtual AdversaryResponse respond(const GameState &state, int q) = 0;
        virtual std::unique_ptr<Adversary> clone() const = 0;
};

struct MatchLimits {
        int max_queries = -1; // -1: the number of queries of the problem
};

inline Transcript
play_match(const ProblemSpec &spec, int k, Questioner &questioner, Adversary &adversary, MatchLimits limits = {})
{
        const int cap = limits.max_queries < 0 ? spec.query_count() : limits.max_queries;
        Transcript t;
        t.problem = spec.name();
        t.k = k;
        t.initial_input = adversary.initial_input(k);
        GameState s;
        try {
                s = initial_state(spec, k, t.initial_input);
        } catch (const IllegalMove &e) {
                throw Forfeit(adversary.name(), e.what());
        }
        while (!is_certificate(s.consistent, spec)) {
                if (s.count >= cap)
                        throw LimitExceeded("match exceeded " + std::to_string(cap) + " queries");
                const int q = questioner.next_query(s);
                if (q < 0 || q >= spec.query_count() || s.asked(q))
                        throw Forfeit(questioner.name(), "proposed illegal query " + std::to_string(q));
                const AdversaryResponse resp = adversary.respond(s, q);
                GameState next;
                try {
                        next = apply_move(s, q, resp, spec);
                } catch (const IllegalMove &e) {
                        throw Forfeit(adversary.name(), e.what());
                }
                Event e{q, resp.change, next.answer(q)};
                t.events.push_back(e);
                s = std::move(next);
                questioner.observe(s, e);
                adversary.observe(s, e);
        }
        t.final_state = s;
        return t;
}

} // namespace kchange
