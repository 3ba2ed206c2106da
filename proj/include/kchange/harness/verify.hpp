// Named checks of solver values against the closed forms, strategy
// guarantees, and structural properties of D_k.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kchange/harness/report.hpp"
#include "kchange/problems.hpp"
#include "kchange/solver.hpp"
#include "kchange/strategies.hpp"

namespace kchange::harness {

struct CheckResult {
        std::string group;
        std::string name;
        std::string citation;
        bool passed = false;
        std::string expected;
        std::string actual;
        std::string witness;
};

struct VerifyReport {
        std::vector<CheckResult> results;

        std::size_t executed() const { return results.size(); }

        std::size_t
        failures() const
        {
                return static_cast<std::size_t>(
                        std::count_if(results.begin(), results.end(), [](const auto &r) { return !r.passed; }));
        }

        bool passed() const { return failures() == 0; }

        std::map<std::string, int>
        per_group() const
        {
                std::map<std::string, int> m;
                for (const auto &r : results)
                        ++m[r.group];
                return m;
        }
};

using Predictor = std::function<Prediction(const ProblemKind &, int, std::optional<int>)>;

struct VerifyOptions {
        std::vector<std::string> only; // empty: every group
        int threads = 1;
        bool long_run = false;
        Predictor predictor = [](const ProblemKind &kind, int k, std::optional<int> D) {
                return predicted_value(kind, k, D);
        };
};

inline const std::vector<std::string> &
verify_groups()
{
        static const std::vector<std::string> groups = {
                "search", "gt-exact",   "gt-atmost", "sorting",  "minmax",    "connectivity", "strategies",
                "prop2",  "monotone",   "prop1",     "saturation", "sandwich", "k0-oracle",    "determinism"};
        return groups;
}

// Shortest certificate for each input by plain enumeration of query sets;
// the worst input gives the k=0 game value.
inline int
certificate_complexity_bruteforce(const ProblemSpec &spec)
{
        const int m = spec.query_count();
        int worst = 0;
        for (int x = 0; x < spec.input_count(); ++x) {
                const InputSet &cls = spec.target_class(x);
                std::vector<InputSet> agree; // inputs agreeing with x on query q
                for (int q = 0; q < m; ++q)
                        agree.push_back(restrict(spec.all_inputs(), q, spec.oracle(x, q), spec));
                int best = -1;
                std::vector<int> pick;
                std::function<bool(int, int, const InputSet &)> choose = [&](int from, int left,
                                                                            const InputSet &s) -> bool {
                        if (left == 0)
                                return s.is_subset_of(cls);
                        for (int q = from; q <= m - left; ++q)
                                if (choose(q + 1, left - 1, s & agree[q]))
                                        return true;
                        return false;
                };
                for (int size = 0; size <= m && best < 0; ++size)
                        if (choose(0, size, spec.all_inputs()))
                                best = size;
                worst = std::max(worst, best);
        }
        return worst;
}

namespace detail {

struct Row {
        ProblemKind kind;
        int k_max = 0;
        std::vector<int> values; // D_0..D_kmax, -1 when incomplete
        int deterministic = 0;
        std::shared_ptr<Solver> solver;
};

inline std::string
cell_name(const ProblemKind &kind, int k)
{
        return kind.label() + " k=" + std::to_string(k);
}

class Verifier {
public:
        explicit Verifier(VerifyOptions o) : o_(std::move(o))
        {
                for (const auto &g : o_.only)
                        if (std::find(verify_groups().begin(), verify_groups().end(), g) == verify_groups().end())
                                throw ConfigError("unknown verify check group '" + g + "'");
        }

        VerifyReport
        run()
        {
                build_rows();
                if (want("search"))
                        cells("search", Family::Search);
                if (want("gt-exact"))
                        cells("gt-exact", Family::GtExact);
                if (want("gt-atmost"))
                        cells("gt-atmost", Family::GtAtMost);
                if (want("sorting"))
                        cells("sorting", Family::Sorting);
                if (want("minmax")) {
                        cells("minmax", Family::MinMax);
                        cells("minmax", Family::MaxOnly);
                }
                if (want("connectivity"))
                        cells("connectivity", Family::Connectivity);
                if (want("strategies"))
                        strategies();
                if (want("prop2"))
                        prop2();
                if (want("monotone"))
                        monotone();
                if (want("prop1"))
                        prop1();
                if (want("saturation"))
                        saturation();
                if (want("sandwich"))
                        sandwich();
                if (want("k0-oracle"))
                        k0_oracle();
                if (want("determinism"))
                        determinism();
                return std::move(report_);
        }

private:
        bool
        want(const std::string &g) const
        {
                return o_.only.empty() || std::find(o_.only.begin(), o_.only.end(), g) != o_.only.end();
        }

        void
        add(CheckResult r)
        {
                report_.results.push_back(std::move(r));
        }

        // The grids of the value checks; the property checks run over all of them.
        std::vector<std::pair<ProblemKind, int>>
        grid() const
        {
                std::vector<std::pair<ProblemKind, int>> g;
                for (int n = 2; n <= 6; ++n)
                        g.push_back({{Family::Search, n, 0}, 4});
                for (int n = 1; n <= 5; ++n)
                        for (int d = 0; d <= std::min(2, n); ++d)
                                g.push_back({{Family::GtExact, n, d}, 3});
                for (int n = 1; n <= 5; ++n)
                        for (int d = 0; d <= std::min(3, n); ++d)
                                g.push_back({{Family::GtAtMost, n, d}, 3});
                for (Family f : {Family::Sorting, Family::MinMax, Family::MaxOnly})
                        for (int n = 3; n <= 5; ++n)
                                g.push_back({{f, n, 0}, 3});
                for (int n = 3; n <= 4; ++n)
                        g.push_back({{Family::Connectivity, n, 0}, 3});
                if (o_.long_run)
                        g.push_back({{Family::Connectivity, 5, 0}, 1});
                return g;
        }

        void
        build_rows()
        {
                const auto g = grid();
                rows_.resize(g.size());
                std::atomic<std::size_t> next{0};
                std::exception_ptr failure;
                std::mutex mu;
                auto work = [&] {
                        for (std::size_t i = next++; i < g.size(); i = next++) {
                                try {
                                        Row r;
                                        r.kind = g[i].first;
                                        r.k_max = g[i].second;
                                        r.solver = std::make_shared<Solver>(build_problem(r.kind));
                                        for (int k = 0; k <= r.k_max; ++k) {
                                                auto res = r.solver->game_value(k);
                                                r.values.push_back(res.complete ? res.value : -1);
                                        }
                                        r.deterministic = r.solver->deterministic_value(r.solver->spec().all_inputs());
                                        rows_[i] = std::move(r);
                                } catch (...) {
                                        std::lock_guard lock(mu);
                                        if (!failure)
                                                failure = std::current_exception();
                                }
                        }
                };
                {
                        std::vector<std::jthread> pool;
                        for (int t = 0; t < std::max(1, o_.threads); ++t)
                                pool.emplace_back(work);
                }
                if (failure)
                        std::rethrow_exception(failure);
        }

        void
        cells(const std::string &group, Family f)
        {
                for (auto &row : rows_) {
                        if (row.kind.family != f)
                                continue;
                        for (int k = 0; k <= row.k_max; ++k) {
                                CheckResult r;
                                r.group = group;
                                r.name = cell_name(row.kind, k);
                                const Prediction p = o_.predictor(row.kind, k, row.deterministic);
                                r.citation = p.source;
                                r.expected = p.describe();
                                const int v = row.values[k];
                                r.actual = v < 0 ? "incomplete" : std::to_string(v);
                                r.passed = v >= 0 && p.admits(v);
                                if (!r.passed && v >= 0) {
                                        const auto pv = row.solver->principal_variation(k);
                                        r.witness = "optimal play:\n" + transcript_text(row.solver->spec(), pv);
                                }
                                add(std::move(r));
                        }
                }
        }

        void
        guarantee(const std::string &name, const std::string &citation, const ProblemKind &kind, int k,
                  const std::string &agent, bool is_adversary, const std::function<bool(int)> &ok,
                  const std::string &expected)
        {
                const ProblemSpec spec = build_problem(kind);
                auto solver = std::make_shared<Solver>(spec);
                CheckResult r;
                r.group = "strategies";
                r.name = name;
                r.citation = citation;
                r.expected = expected;
                SolveResult res;
                std::unique_ptr<Adversary> adv;
                std::unique_ptr<Questioner> qn;
                if (is_adversary) {
                        adv = make_adversary(agent, spec, solver);
                        res = value_against_adversary(spec, k, *adv);
                } else {
                        qn = make_questioner(agent, spec, solver);
                        res = value_against_questioner(spec, k, *qn);
                }
                r.actual = res.complete ? std::to_string(res.value) : "incomplete";
                r.passed = res.complete && ok(res.value);
                if (!r.passed && res.complete) {
                        const Transcript t = is_adversary ? best_line_against_adversary(spec, k, *adv)
                                                          : worst_line_against_questioner(spec, k, *qn);
                        r.witness = std::string(is_adversary ? "shortest line against " : "longest line against ") +
                                    agent + ":\n" + transcript_text(spec, t);
                }
                add(std::move(r));
        }

        void
        strategies()
        {
                using F = Family;
                guarantee("turan-complement connectivity n=4 k=1 >= 5", "connectivity lower bound t(n,k+2)",
                          {F::Connectivity, 4, 0}, 1, "turan-complement", true, [](int v) { return v >= 5; },
                          ">=5");
                guarantee("half-split gt-atmost n=3 d=2 k=1 = 3", "gt-atmost: k+d", {F::GtAtMost, 3, 2}, 1,
                          "half-split", true, [](int v) { return v == 3; }, "3");
                guarantee("interleave sorting n=4 k=1 = 4", "sorting: D_1 = ceil(3n/2)-2", {F::Sorting, 4, 0}, 1,
                          "interleave", true, [](int v) { return v == 4; }, "4");
                guarantee("chain minmax n=4 k=1 <= 4", "minmax: D_k <= n+k-1", {F::MinMax, 4, 0}, 1, "chain",
                          false, [](int v) { return v <= 4; }, "<=4");
                guarantee("chain-repair sorting n=5 k=1 <= 6", "sorting: D_1 = ceil(3n/2)-2", {F::Sorting, 5, 0}, 1,
                          "chain-repair", false, [](int v) { return v <= 6; }, "<=6");
                guarantee("spanning-forest connectivity n=4 k=1 <= 6", "connectivity upper bound, clipped at C(n,2)",
                          {F::Connectivity, 4, 0}, 1, "spanning-forest", false, [](int v) { return v <= 6; }, "<=6");
                // The min{k+1,D} lower bound and the composed upper bound, played by agents.
                for (auto [kind, k] : std::vector<std::pair<ProblemKind, int>>{
                             {{F::Sorting, 4, 0}, 2}, {{F::GtAtMost, 4, 1}, 2}, {{F::Connectivity, 4, 0}, 1}}) {
                        const int D = row_of(kind).deterministic;
                        const int want = std::min(k + 1, D);
                        guarantee("stubborn " + cell_name(kind, k) + " >= " + std::to_string(want),
                                  "min{k+1,D} lower bound", kind, k, "stubborn", true,
                                  [want](int v) { return v >= want; }, ">=" + std::to_string(want));
                }
                for (auto [kind, segs] : std::vector<std::pair<ProblemKind, std::vector<int>>>{
                             {{F::Sorting, 4, 0}, {0, 0}}, {{F::MinMax, 4, 0}, {1, 0}}, {{F::GtAtMost, 4, 2}, {0, 0, 0}}}) {
                        const Row &row = row_of(kind);
                        int k = static_cast<int>(segs.size()) - 1, bound = 0;
                        std::string name = "compose:";
                        for (std::size_t i = 0; i < segs.size(); ++i) {
                                k += segs[i];
                                bound += row.values.at(segs[i]);
                                name += (i ? "," : "") + std::to_string(segs[i]);
                        }
                        guarantee(name + " " + cell_name(kind, k) + " <= " + std::to_string(bound),
                                  "sum of D_{j_i} upper bound", kind, k, name, false,
                                  [bound](int v) { return v <= bound; }, "<=" + std::to_string(bound));
                }
        }

        const Row &
        row_of(const ProblemKind &kind) const
        {
                for (const auto &r : rows_)
                        if (r.kind.family == kind.family && r.kind.n == kind.n && r.kind.d == kind.d)
                                return r;
                throw Error("verify: no row for " + kind.label());
        }

        template <class F>
        void
        per_row(const std::string &group, const std::string &citation, F &&check)
        {
                for (const auto &row : rows_) {
                        CheckResult r;
                        r.group = group;
                        r.name = row.kind.label();
                        r.citation = citation;
                        if (std::find(row.values.begin(), row.values.end(), -1) != row.values.end()) {
                                r.actual = "incomplete";
                                r.passed = false;
                        } else {
                                check(row, r);
                        }
                        add(std::move(r));
                }
        }

        void
        prop2()
        {
                per_row("prop2", "D_k >= min{k+1, D}", [](const Row &row, CheckResult &r) {
                        r.expected = "D_k >= min{k+1," + std::to_string(row.deterministic) + "}";
                        r.passed = true;
                        for (int k = 0; k <= row.k_max && r.passed; ++k)
                                if (row.values[k] < std::min(k + 1, row.deterministic)) {
                                        r.passed = false;
                                        r.witness = "k=" + std::to_string(k) + " value " + std::to_string(row.values[k]);
                                }
                        r.actual = r.passed ? "holds" : "violated";
                });
        }

        void
        monotone()
        {
                per_row("monotone", "D_k <= D_{k+1}", [](const Row &row, CheckResult &r) {
                        r.expected = "non-decreasing in k";
                        r.passed = std::is_sorted(row.values.begin(), row.values.end());
                        r.actual = r.passed ? "holds" : "violated";
                        if (!r.passed) {
                                std::ostringstream w;
                                for (int v : row.values)
                                        w << v << ' ';
                                r.witness = "values: " + w.str();
                        }
                });
        }

        void
        prop1()
        {
                per_row("prop1", "D_{j1+..+jl+l-1} <= D_{j1}+..+D_{jl}", [](const Row &row, CheckResult &r) {
                        r.expected = "every composition with l <= 3";
                        r.passed = true;
                        const int K = row.k_max;
                        int checked = 0;
                        auto test = [&](const std::vector<int> &js) {
                                int k = static_cast<int>(js.size()) - 1, sum = 0;
                                for (int j : js) {
                                        k += j;
                                        sum += row.values[j];
                                }
                                if (k > K)
                                        return;
                                ++checked;
                                if (row.values[k] > sum && r.passed) {
                                        r.passed = false;
                                        std::ostringstream w;
                                        w << "composition";
                                        for (int j : js)
                                                w << ' ' << j;
                                        w << ": D_" << k << '=' << row.values[k] << " > " << sum;
                                        r.witness = w.str();
                                }
                        };
                        for (int a = 0; a <= K; ++a) {
                                test({a});
                                for (int b = 0; a + b + 1 <= K; ++b) {
                                        test({a, b});
                                        for (int c = 0; a + b + c + 2 <= K; ++c)
                                                test({a, b, c});
                                }
                        }
                        r.actual = (r.passed ? "holds over " : "violated; checked ") + std::to_string(checked);
                });
        }

        void
        saturation()
        {
                per_row("saturation", "D_k = D for k >= D-1", [](const Row &row, CheckResult &r) {
                        r.expected = "D_k = " + std::to_string(row.deterministic) + " for k >= " +
                                     std::to_string(row.deterministic - 1);
                        r.passed = true;
                        for (int k = std::max(0, row.deterministic - 1); k <= row.k_max && r.passed; ++k)
                                if (row.values[k] != row.deterministic) {
                                        r.passed = false;
                                        r.witness = "k=" + std::to_string(k) + " value " + std::to_string(row.values[k]);
                                }
                        r.actual = r.passed ? "holds" : "violated";
                });
        }

        void
        sandwich()
        {
                per_row("sandwich", "D_0 <= D_k <= D", [](const Row &row, CheckResult &r) {
                        r.expected = "[" + std::to_string(row.values[0]) + "," + std::to_string(row.deterministic) + "]";
                        r.passed = true;
                        for (int k = 0; k <= row.k_max && r.passed; ++k)
                                if (row.values[k] < row.values[0] || row.values[k] > row.deterministic) {
                                        r.passed = false;
                                        r.witness = "k=" + std::to_string(k) + " value " + std::to_string(row.values[k]);
                                }
                        r.actual = r.passed ? "holds" : "violated";
                });
        }

        void
        k0_oracle()
        {
                per_row("k0-oracle", "D_0 = certificate complexity", [](const Row &row, CheckResult &r) {
                        const int oracle = certificate_complexity_bruteforce(row.solver->spec());
                        r.expected = std::to_string(oracle);
                        r.actual = std::to_string(row.values[0]);
                        r.passed = oracle == row.values[0];
                });
        }

        void
        determinism()
        {
                using F = Family;
                const std::vector<std::pair<ProblemKind, int>> cases = {
                        {{F::Search, 6, 0}, 3}, {{F::GtAtMost, 5, 2}, 2}, {{F::Sorting, 4, 0}, 2},
                        {{F::MinMax, 4, 0}, 1}, {{F::Connectivity, 4, 0}, 1}};
                for (auto [kind, k] : cases) {
                        CheckResult r;
                        r.group = "determinism";
                        r.name = cell_name(kind, k) + " threads 1 vs 4";
                        r.citation = "solver determinism";
                        SolveOptions one, many;
                        many.threads = 4;
                        Solver a(build_problem(kind), one), b(build_problem(kind), many);
                        auto ra = a.game_value_with_pv(k);
                        auto rb = b.game_value_with_pv(k);
                        r.expected = std::to_string(ra.value);
                        r.actual = std::to_string(rb.value);
                        const bool same_pv = ra.principal_variation && rb.principal_variation &&
                                             ra.principal_variation->initial_input ==
                                                     rb.principal_variation->initial_input &&
                                             ra.principal_variation->events == rb.principal_variation->events;
                        r.passed = ra.complete && rb.complete && ra.value == rb.value && same_pv;
                        if (!same_pv)
                                r.witness = "principal variations differ";
                        add(std::move(r));
                }
        }

        VerifyOptions o_;
        std::vector<Row> rows_;
        VerifyReport report_;
};

} // namespace detail

inline VerifyReport
run_verify(const VerifyOptions &options = {})
{
        return detail::Verifier(options).run();
}

inline ordered_json
verify_json(const VerifyReport &report)
{
        ordered_json j;
        j["version"] = kVersion;
        j["executed"] = report.executed();
        j["failures"] = report.failures();
        j["passed"] = report.passed();
        ordered_json checks = ordered_json::array();
        for (const auto &r : report.results) {
                ordered_json c;
                c["group"] = r.group;
                c["name"] = r.name;
                c["citation"] = r.citation;
                c["expected"] = r.expected;
                c["actual"] = r.actual;
                c["passed"] = r.passed;
                if (!r.witness.empty())
                        c["witness"] = r.witness;
                checks.push_back(c);
        }
        j["checks"] = checks;
        return j;
}

inline std::string
verify_text(const VerifyReport &report)
{
        std::ostringstream out;
        for (const auto &r : report.results) {
                out << (r.passed ? "PASS " : "FAIL ") << '[' << r.group << "] " << r.name << ": expected "
                    << r.expected << ", got " << r.actual << "  (" << r.citation << ")\n";
                if (!r.passed && !r.witness.empty()) {
                        std::istringstream w(r.witness);
                        for (std::string line; std::getline(w, line);)
                                out << "     " << line << '\n';
                }
        }
        out << report.executed() << " checks, " << report.failures() << " failed\n";
        return out.str();
}

} // namespace kchange::harness
