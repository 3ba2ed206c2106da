#include <gtest/gtest.h>

#include "kchange/problems.hpp"
#include "kchange/solver.hpp"
#include "kchange/strategies.hpp"
#include "oracles.hpp"

using namespace kchange;

namespace {

// State reached by answering `queries` truthfully on input x.
GameState
after(const ProblemSpec &spec, int k, int x, const std::vector<int> &queries)
{
        GameState s = initial_state(spec, k, x);
        for (int q : queries)
                s = apply_move(s, q, {}, spec);
        return s;
}

int
rank_of(std::vector<int> order)
{
        return order_rank(order);
}

} // namespace

TEST(ReorderTest, TwoChains)
{
        EXPECT_EQ(sorting_interleave_reorder({{0, 1, 2}, {3, 4}}), (std::vector<int>{0, 3, 1, 4, 2}));
}

TEST(ReorderTest, LeftoverChainNestsAtTop)
{
        EXPECT_EQ(sorting_interleave_reorder({{0, 1, 2}, {3, 4}, {5}}), (std::vector<int>{0, 3, 1, 4, 5, 2}));
}

TEST(ReorderTest, SingletonsGiveIdentity)
{
        EXPECT_EQ(sorting_interleave_reorder({{0}, {1}, {2}, {3}}), (std::vector<int>{0, 1, 2, 3}));
}

TEST(ReorderTest, SeparatesWhenGapsCanBeFilled)
{
        // the other chains together fill every gap of the frame
        const std::vector<std::vector<std::vector<int>>> cases = {
                {{0, 1, 2}, {3, 4}, {5}},
                {{5, 3, 1}, {0, 2}, {4}},
                {{0, 1, 2, 3}, {4, 5}, {6}},
                {{2, 0, 4}, {1, 5}, {3}},
        };
        for (const auto &chains : cases) {
                std::vector<std::pair<int, int>> rel;
                for (const auto &c : chains)
                        for (std::size_t i = 0; i + 1 < c.size(); ++i)
                                rel.emplace_back(c[i], c[i + 1]);
                const auto order = sorting_interleave_reorder(chains);
                EXPECT_TRUE(order_separates(order, rel)) << order_label(order);
        }
}

TEST(ReorderTest, RelationChainsFollowAnswers)
{
        const auto chains = relation_chains(5, {{3, 1}, {1, 4}, {2, 0}});
        ASSERT_EQ(chains.size(), 2u);
        EXPECT_EQ(chains[0], (std::vector<int>{2, 0}));
        EXPECT_EQ(chains[1], (std::vector<int>{3, 1, 4}));
        EXPECT_THROW(topological_order({0, 1}, {{0, 1}, {1, 0}}), Error);
}

TEST(MinMaxReorderTest, BlockOrder)
{
        // b=0 smaller only, x=1 out, c=2 larger only, d=3 untouched
        const std::vector<std::pair<int, int>> rel = {{0, 1}, {1, 2}};
        const auto p = minmax_partition(4, rel);
        EXPECT_EQ(p.a, std::vector<int>{1});
        EXPECT_EQ(p.b, std::vector<int>{0});
        EXPECT_EQ(p.c, std::vector<int>{2});
        EXPECT_EQ(p.d, std::vector<int>{3});
        EXPECT_EQ(minmax_reorder(p, {0, 1, 2, 3}, rel), (std::vector<int>{0, 1, 3, 2}));
}

TEST(MinMaxReorderTest, UntouchedKeepsPrior)
{
        const std::vector<int> prior = {3, 0, 2, 1};
        EXPECT_EQ(minmax_reorder(minmax_partition(4, {}), prior, {}), prior);
}

TEST(MinMaxReorderTest, BlocksKeepPriorOrder)
{
        const std::vector<std::pair<int, int>> rel = {{3, 1}, {0, 2}};
        EXPECT_EQ(minmax_reorder(minmax_partition(4, rel), {3, 0, 2, 1}, rel), (std::vector<int>{3, 0, 2, 1}));
}

TEST(QuestionerTest, ChainAsksFirstPairOfCurrentOrder)
{
        const auto spec = build_problem({Family::MinMax, 4, 0});
        ChainQuestioner q(spec);
        const auto s = initial_state(spec, 1, rank_of({2, 0, 3, 1}));
        EXPECT_EQ(q.next_query(s), pair_index(4, 0, 2));
}

TEST(QuestionerTest, ForestStartsWithFirstEdge)
{
        const auto spec = build_problem({Family::Connectivity, 4, 0});
        SpanningForestQuestioner q(spec);
        const auto path = static_cast<int>(edge_mask(4, {{0, 1}, {1, 2}, {2, 3}}));
        EXPECT_EQ(q.next_query(initial_state(spec, 1, path)), pair_index(4, 0, 1));
}

TEST(QuestionerTest, ForestThenSmallestCut)
{
        const auto spec = build_problem({Family::Connectivity, 5, 0});
        SpanningForestQuestioner q(spec);
        const auto g = static_cast<int>(edge_mask(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}}));
        auto s = initial_state(spec, 0, g);
        std::vector<int> asked;
        for (int i = 0; i < 3; ++i) {
                const int next = q.next_query(s);
                asked.push_back(next);
                s = apply_move(s, next, {}, spec);
        }
        // forest edges first, in order
        EXPECT_EQ(asked, (std::vector<int>{pair_index(5, 0, 1), pair_index(5, 0, 2), pair_index(5, 3, 4)}));
        EXPECT_EQ(q.next_query(s), pair_index(5, 0, 3));
}

TEST(QuestionerTest, ChainRepairWalksAdjacentPairs)
{
        const auto spec = build_problem({Family::Sorting, 4, 0});
        ChainRepairQuestioner q(spec);
        const int x = rank_of({3, 1, 0, 2});
        const auto s = after(spec, 1, x, {pair_index(4, 1, 3)});
        EXPECT_EQ(q.next_query(s), pair_index(4, 0, 1));
}

TEST(QuestionerTest, HalvingSplitsEvenly)
{
        const auto spec = build_problem({Family::Search, 6, 0});
        HalvingQuestioner q(spec);
        const int first = q.next_query(initial_state(spec, 0, 0));
        EXPECT_EQ((spec.yes_set(first) & spec.all_inputs()).size(), 3);
        EXPECT_EQ(first, 0b000111);
        for (int k = 0; k <= 2; ++k)
                EXPECT_LE(value_against_questioner(spec, k, q).value, 3 + k);
}

TEST(AdversaryTest, HalfSplitMovesDefectivesIntoQuery)
{
        const auto spec = build_problem({Family::GtAtMost, 8, 2});
        HalfSplitAdversary a(spec);
        const int x0 = a.initial_input(1);
        const auto masks = defective_sets(8, 2, false);
        EXPECT_EQ(masks[x0], 0b11u);
        const int q = 0b11111000; // |A| = 5
        const auto s = initial_state(spec, 1, x0);
        const auto r = a.respond(s, q);
        ASSERT_TRUE(r.change);
        EXPECT_EQ(masks[*r.change], 0b11000u);
        const auto next = apply_move(s, q, r, spec);
        EXPECT_EQ(next.answer(q), Outcome::Yes);
        a.observe(next, Event{q, r.change, Outcome::Yes});
        EXPECT_EQ(a.region(), 0b11111000u);
}

TEST(AdversaryTest, HalfSplitForcesKPlusD)
{
        for (auto [n, d, k] : std::vector<std::tuple<int, int, int>>{{3, 2, 1}, {5, 2, 2}, {4, 3, 1}}) {
                const auto spec = build_problem({Family::GtAtMost, n, d});
                EXPECT_EQ(value_against_adversary(spec, k, HalfSplitAdversary(spec)).value, k + d)
                        << n << "," << d << "," << k;
        }
}

TEST(AdversaryTest, InterleaveChangesAfterHalfTheQueries)
{
        const auto spec = build_problem({Family::Sorting, 5, 0});
        ChainRepairQuestioner q(spec);
        InterleaveAdversary a(spec);
        const auto t = play_match(spec, 1, q, a);
        ASSERT_GE(t.length(), 3);
        EXPECT_FALSE(t.events[0].change);
        EXPECT_FALSE(t.events[1].change);
        ASSERT_TRUE(t.events[2].change);
        EXPECT_EQ(t.changes(), 1);
        // the two answered pairs are not adjacent in the new order
        const auto pos = positions(order_at(5, *t.events[2].change));
        for (int i = 0; i < 2; ++i) {
                auto [u, v] = pair_list(5)[t.events[i].query];
                EXPECT_GT(std::abs(pos[u] - pos[v]), 1);
        }
}

TEST(AdversaryTest, InterleaveNewOrderSeparatesAnsweredPairs)
{
        for (int n = 3; n <= 5; ++n) {
                const auto spec = build_problem({Family::Sorting, n, 0});
                auto solver = std::make_shared<Solver>(spec);
                std::vector<std::unique_ptr<Questioner>> qs;
                qs.push_back(std::make_unique<ChainRepairQuestioner>(spec));
                qs.push_back(std::make_unique<AdjacentScanQuestioner>(spec));
                qs.push_back(std::make_unique<OptimalQuestioner>(solver));
                for (auto &q : qs) {
                        InterleaveAdversary a(spec);
                        const auto t = play_match(spec, 1, *q, a);
                        GameState s = initial_state(spec, 1, t.initial_input);
                        for (const auto &e : t.events) {
                                if (e.change) {
                                        const auto rel = fixed_relations(s, n);
                                        const auto order = order_at(n, *e.change);
                                        EXPECT_TRUE(order_separates(order, rel)) << q->name() << " n=" << n;
                                }
                                s = apply_move(s, e.query, AdversaryResponse{e.change}, spec);
                        }
                }
        }
}

TEST(AdversaryTest, OutAvoidChangeCount)
{
        for (int n = 3; n <= 5; ++n) {
                const auto spec = build_problem({Family::MinMax, n, 0});
                auto solver = std::make_shared<Solver>(spec);
                for (int k = 1; k <= 3; ++k) {
                        ChainQuestioner chain(spec);
                        OptimalQuestioner opt(solver);
                        for (Questioner *q : {static_cast<Questioner *>(&chain), static_cast<Questioner *>(&opt)}) {
                                OutAvoidAdversary a(spec);
                                const auto t = play_match(spec, k, *q, a);
                                EXPECT_LE(t.changes(), std::min(k, (n + 1) / 2)) << n << " " << k;
                        }
                }
        }
}

TEST(AdversaryTest, OutAvoidKeepsElementsInWhileItCan)
{
        const auto spec = build_problem({Family::MinMax, 4, 0});
        OutAvoidAdversary a(spec);
        a.initial_input(2);
        // 0<1 answered; asking (1,2): the answer 2<1 keeps everyone in
        auto s = after(spec, 2, 0, {pair_index(4, 0, 1)});
        const int q = pair_index(4, 1, 2);
        const auto r = a.respond(s, q);
        const auto next = apply_move(s, q, r, spec);
        EXPECT_EQ(next.answer(q), Outcome::No);
}

TEST(AdversaryTest, TuranFlipsOnlyWhenNoWouldFinish)
{
        const auto spec = build_problem({Family::Connectivity, 4, 0});
        TuranComplementAdversary a(spec);
        const int x0 = a.initial_input(1);
        EXPECT_EQ(static_cast<EdgeMask>(x0), edge_mask(4, turan_complement(4, 3)));
        SpanningForestQuestioner q(spec);
        const auto t = play_match(spec, 1, q, a);
        int current = t.initial_input;
        for (const auto &e : t.events) {
                if (e.change) {
                        EXPECT_EQ(*e.change, current | (1 << e.query));
                        EXPECT_EQ(e.outcome, Outcome::Yes);
                        current = *e.change;
                }
        }
        EXPECT_GE(t.length(), 5);
}

TEST(AdversaryTest, TuranFinalInputDisconnectedWhileTuranPairsRemain)
{
        for (int n = 3; n <= 4; ++n) {
                const auto spec = build_problem({Family::Connectivity, n, 0});
                auto solver = std::make_shared<Solver>(spec);
                for (int k = 0; k <= 2; ++k) {
                        const auto parts = turan_parts(n, k + 2);
                        std::vector<int> part_of(n);
                        for (std::size_t p = 0; p < parts.size(); ++p)
                                for (int v : parts[p])
                                        part_of[v] = static_cast<int>(p);
                        SpanningForestQuestioner forest(spec);
                        OptimalQuestioner opt(solver);
                        for (Questioner *q : {static_cast<Questioner *>(&forest), static_cast<Questioner *>(&opt)}) {
                                TuranComplementAdversary a(spec);
                                const auto t = play_match(spec, k, *q, a);
                                bool unasked_cross = false;
                                const auto pairs = pair_list(n);
                                for (int e = 0; e < static_cast<int>(pairs.size()); ++e)
                                        if (part_of[pairs[e].first] != part_of[pairs[e].second] &&
                                            !t.final_state.asked(e))
                                                unasked_cross = true;
                                if (unasked_cross) {
                                        EXPECT_FALSE(is_connected(static_cast<EdgeMask>(t.final_state.current), n))
                                                << q->name() << " n=" << n << " k=" << k;
                                }
                        }
                }
        }
}

TEST(AdversaryTest, StubbornForcesKPlusOneOrD)
{
        for (auto kind : std::vector<ProblemKind>{{Family::Search, 5, 0},
                                                  {Family::GtExact, 4, 2},
                                                  {Family::Sorting, 4, 0},
                                                  {Family::MinMax, 4, 0},
                                                  {Family::Connectivity, 4, 0}}) {
                const auto spec = build_problem(kind);
                auto solver = std::make_shared<Solver>(spec);
                const int d = solver->deterministic_value(spec.all_inputs());
                for (int k = 0; k <= 3; ++k)
                        EXPECT_GE(value_against_adversary(spec, k, StubbornAdversary(solver)).value,
                                  std::min(k + 1, d))
                                << kind.label() << " k=" << k;
        }
}

TEST(ComposeTest, NameAndSegments)
{
        const auto spec = build_problem({Family::Sorting, 4, 0});
        auto q = make_questioner("compose:1,0,2", spec);
        EXPECT_EQ(q->name(), "compose:1,0,2");
        EXPECT_THROW(make_questioner("compose:", spec), ConfigError);
        EXPECT_THROW(make_questioner("compose:1,x", spec), ConfigError);
        EXPECT_THROW(make_questioner("compose:-1", spec), ConfigError);
}

TEST(ComposeTest, SingleSegmentIsOptimal)
{
        const auto spec = build_problem({Family::MinMax, 4, 0});
        auto solver = std::make_shared<Solver>(spec);
        for (int k = 0; k <= 2; ++k) {
                ComposeQuestioner q(solver, {k});
                EXPECT_EQ(value_against_questioner(spec, k, q).value, solver->game_value(k).value);
        }
}

TEST(RegistryTest, UnknownNamesAndMismatchedFamilies)
{
        const auto sorting = build_problem({Family::Sorting, 4, 0});
        EXPECT_THROW(make_questioner("nope", sorting), ConfigError);
        EXPECT_THROW(make_adversary("nope", sorting), ConfigError);
        EXPECT_THROW(make_questioner("spanning-forest", sorting), ConfigError);
        EXPECT_THROW(make_adversary("half-split", sorting), ConfigError);
        EXPECT_THROW(make_questioner("singleton", sorting), ConfigError);
}

TEST(RegistryTest, EveryNameBuildsForSomeFamily)
{
        const std::vector<ProblemKind> kinds = {{Family::Search, 4, 0},  {Family::GtAtMost, 4, 2},
                                                {Family::Sorting, 4, 0}, {Family::MinMax, 4, 0},
                                                {Family::MaxOnly, 4, 0}, {Family::Connectivity, 4, 0}};
        std::vector<ProblemSpec> specs;
        for (const auto &k : kinds)
                specs.push_back(build_problem(k));
        auto builds = [&](auto make, const std::string &name) {
                for (const auto &s : specs) {
                        try {
                                make(name, s);
                                return true;
                        } catch (const ConfigError &) {
                        }
                }
                return false;
        };
        for (const auto &name : questioner_names()) {
                const std::string real = name.rfind("compose:", 0) == 0 ? "compose:0,1" : name;
                EXPECT_TRUE(builds([](const std::string &n, const ProblemSpec &s) { return make_questioner(n, s); }, real))
                        << name;
        }
        for (const auto &name : adversary_names())
                EXPECT_TRUE(builds([](const std::string &n, const ProblemSpec &s) { return make_adversary(n, s); }, name))
                        << name;
}

// The constructed Questioners, measured when a change can only happen
// between queries (the Questioner sees the new input before asking), and
// when it can happen after the query is posed.
TEST(TimingTest, ChangesBetweenQueriesOnly)
{
        const auto minmax4 = build_problem({Family::MinMax, 4, 0});
        const auto sorting5 = build_problem({Family::Sorting, 5, 0});
        EXPECT_EQ(oracle::worst_between_queries(minmax4, 1, ChainQuestioner(minmax4)), 4);
        EXPECT_EQ(oracle::worst_between_queries(sorting5, 1, ChainRepairQuestioner(sorting5)), 6);
}

TEST(TimingTest, ChangesAfterQueryIsPosed)
{
        const auto minmax4 = build_problem({Family::MinMax, 4, 0});
        const auto sorting5 = build_problem({Family::Sorting, 5, 0});
        EXPECT_EQ(value_against_questioner(minmax4, 1, ChainQuestioner(minmax4)).value, 5);
        EXPECT_EQ(value_against_questioner(sorting5, 1, ChainRepairQuestioner(sorting5)).value, 7);
}

TEST(PlayTest, ForestAgainstNoUnlessDisconnect)
{
        const auto spec = build_problem({Family::Connectivity, 4, 0});
        auto q = make_questioner("spanning-forest", spec);
        auto a = make_adversary("no-unless-disconnect", spec);
        EXPECT_EQ(play_match(spec, 2, *q, *a).length(), 6);
}

TEST(PlayTest, ChainAgainstOutAvoidFive)
{
        const auto spec = build_problem({Family::MinMax, 5, 0});
        ChainQuestioner q(spec);
        OutAvoidAdversary a(spec);
        const auto t = play_match(spec, 1, q, a);
        EXPECT_GE(t.length(), 5);
        EXPECT_LE(t.length(), 6);
        EXPECT_LE(t.changes(), 1);
}
