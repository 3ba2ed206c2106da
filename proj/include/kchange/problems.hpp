// Problem families: search, group testing, sorting, min/max selection and
// graph connectivity, plus Turán-graph utilities and the closed-form values
// and bounds known for each family.
//
// Input encodings are fixed so that input indices (and therefore transcripts
// and cache records) are reproducible:
//   - group testing inputs are defective sets as bit masks, in colex order
//     (numeric order of the mask);
//   - sorting inputs are permutations in lexicographic rank order, each stored
//     as the list of elements from smallest to largest;
//   - graph inputs are edge sets as masks over the lexicographically sorted
//     pair list, so the input index is the mask itself.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kchange/errors.hpp"
#include "kchange/game.hpp"

namespace kchange {

enum class Family { Search, GtExact, GtAtMost, Sorting, MinMax, MaxOnly, Connectivity };

inline constexpr Family kAllFamilies[] = {Family::Search,  Family::GtExact, Family::GtAtMost,    Family::Sorting,
                                          Family::MinMax,  Family::MaxOnly, Family::Connectivity};

inline std::string
family_name(Family f)
{
        switch (f) {
        case Family::Search: return "search";
        case Family::GtExact: return "gt-exact";
        case Family::GtAtMost: return "gt-atmost";
        case Family::Sorting: return "sorting";
        case Family::MinMax: return "minmax";
        case Family::MaxOnly: return "maxonly";
        case Family::Connectivity: return "connectivity";
        }
        return "?";
}

inline std::optional<Family>
parse_family(const std::string &s)
{
        for (Family f : kAllFamilies)
                if (family_name(f) == s)
                        return f;
        return std::nullopt;
}

inline bool
uses_defectives(Family f)
{
        return f == Family::GtExact || f == Family::GtAtMost;
}

struct ProblemKind {
        Family family = Family::Search;
        int n = 1;
        int d = 0; // group testing only

        std::string
        label() const
        {
                std::string s = family_name(family) + "(n=" + std::to_string(n);
                if (uses_defectives(family))
                        s += ",d=" + std::to_string(d);
                return s + ")";
        }

        friend bool operator==(const ProblemKind &, const ProblemKind &) = default;
};

inline std::int64_t
binomial(int n, int r)
{
        if (r < 0 || r > n)
                return 0;
        std::int64_t c = 1;
        for (int i = 1; i <= r; ++i)
                c = c * (n - r + i) / i;
        return c;
}

inline int
ceil_log2(int n)
{
        int b = 0;
        while ((1 << b) < n)
                ++b;
        return b;
}

// ---------------------------------------------------------------------------
// Element pairs (sorting, min/max, connectivity queries).

inline std::vector<std::pair<int, int>>
pair_list(int n)
{
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                        out.emplace_back(i, j);
        return out;
}

inline int
pair_index(int n, int i, int j)
{
        if (i > j)
                std::swap(i, j);
        // pairs before row i, then offset within row
        return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::string
pair_label(int i, int j)
{
        return "{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

// ---------------------------------------------------------------------------
// Orders (sorting, min/max).

// All permutations of 0..n-1 in lexicographic order; each lists the elements
// from smallest to largest.
inline std::vector<std::vector<int>>
all_orders(int n)
{
        std::vector<std::vector<int>> out;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do
                out.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
        return out;
}

// Lexicographic rank of an order, i.e. its input index.
inline int
order_rank(const std::vector<int> &order)
{
        const int n = static_cast<int>(order.size());
        int rank = 0;
        std::vector<bool> used(n, false);
        int fact = 1;
        for (int i = 2; i < n; ++i)
                fact *= i;
        for (int i = 0; i < n; ++i) {
                int smaller = 0;
                for (int v = 0; v < order[i]; ++v)
                        smaller += !used[v];
                rank += smaller * fact;
                used[order[i]] = true;
                if (n - 1 - i > 0)
                        fact /= (n - 1 - i);
        }
        return rank;
}

inline std::vector<int>
order_at(int n, int rank)
{
        std::vector<int> pool(n);
        std::iota(pool.begin(), pool.end(), 0);
        int fact = 1;
        for (int i = 2; i < n; ++i)
                fact *= i;
        std::vector<int> out;
        for (int i = 0; i < n; ++i) {
                int idx = rank / fact;
                rank %= fact;
                out.push_back(pool[idx]);
                pool.erase(pool.begin() + idx);
                if (n - 1 - i > 0)
                        fact /= (n - 1 - i);
        }
        return out;
}

// position[e] = place of element e in the order (0 = smallest).
inline std::vector<int>
positions(const std::vector<int> &order)
{
        std::vector<int> pos(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
                pos[order[i]] = static_cast<int>(i);
        return pos;
}

inline std::string
order_label(const std::vector<int> &order)
{
        std::string s;
        for (std::size_t i = 0; i < order.size(); ++i) {
                if (i)
                        s += "<";
                s += std::to_string(order[i]);
        }
        return s;
}

// ---------------------------------------------------------------------------
// Graphs (connectivity). A graph is a mask over pair_list(n).

using EdgeMask = std::uint32_t;

inline bool
has_edge(EdgeMask g, int n, int u, int v)
{
        return (g >> pair_index(n, u, v)) & 1u;
}

// Component label per vertex: the lowest vertex of its component.
inline std::vector<int>
components(EdgeMask g, int n)
{
        std::vector<int> comp(n);
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int v) {
                while (comp[v] != v)
                        v = comp[v] = comp[comp[v]];
                return v;
        };
        const auto pairs = pair_list(n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (!((g >> p) & 1u))
                        continue;
                int a = find(pairs[p].first), b = find(pairs[p].second);
                if (a != b)
                        comp[std::max(a, b)] = std::min(a, b);
        }
        for (int v = 0; v < n; ++v)
                comp[v] = find(v);
        return comp;
}

inline int
component_count(EdgeMask g, int n)
{
        auto comp = components(g, n);
        int c = 0;
        for (int v = 0; v < n; ++v)
                c += comp[v] == v;
        return c;
}

inline bool
is_connected(EdgeMask g, int n)
{
        return component_count(g, n) <= 1;
}

inline std::string
graph_label(EdgeMask g, int n)
{
        std::string s = "[";
        bool first = true;
        const auto pairs = pair_list(n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (!((g >> p) & 1u))
                        continue;
                if (!first)
                        s += " ";
                first = false;
                s += std::to_string(pairs[p].first) + "-" + std::to_string(pairs[p].second);
        }
        return s + "]";
}

// ---------------------------------------------------------------------------
// Turán graphs.

// Balanced parts of sizes ceil(n/r) first, then floor(n/r); contiguous
// vertex ranges. More parts than vertices gives singletons.
inline std::vector<std::vector<int>>
turan_parts(int n, int r)
{
        if (r < 1)
                throw Error("turan_parts: r must be positive");
        const int parts = std::min(r, n);
        std::vector<std::vector<int>> out(parts);
        if (parts == 0)
                return out;
        const int base = n / parts, extra = n % parts;
        int v = 0;
        for (int i = 0; i < parts; ++i)
                for (int s = 0; s < base + (i < extra ? 1 : 0); ++s)
                        out[i].push_back(v++);
        return out;
}

// Edge count of the balanced complete r-partite graph on n vertices.
inline std::int64_t
turan_number(int n, int r)
{
        if (r < 1)
                throw Error("turan_number: r must be positive");
        std::int64_t t = binomial(n, 2);
        for (const auto &part : turan_parts(n, r))
                t -= binomial(static_cast<int>(part.size()), 2);
        return t;
}

// Disjoint union of min(r, n) balanced cliques.
inline std::vector<std::pair<int, int>>
turan_complement(int n, int r)
{
        std::vector<std::pair<int, int>> edges;
        for (const auto &part : turan_parts(n, r))
                for (std::size_t a = 0; a < part.size(); ++a)
                        for (std::size_t b = a + 1; b < part.size(); ++b)
                                edges.emplace_back(part[a], part[b]);
        std::sort(edges.begin(), edges.end());
        return edges;
}

inline EdgeMask
edge_mask(int n, const std::vector<std::pair<int, int>> &edges)
{
        EdgeMask g = 0;
        for (auto [u, v] : edges)
                g |= EdgeMask{1} << pair_index(n, u, v);
        return g;
}

// ---------------------------------------------------------------------------
// Group testing.

// Defective sets (bit masks over n elements) with |X| == d, or |X| <= d.
inline std::vector<std::uint32_t>
defective_sets(int n, int d, bool exact)
{
        std::vector<std::uint32_t> out;
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
                int c = std::popcount(m);
                if (exact ? c == d : c <= d)
                        out.push_back(m);
        }
        return out;
}

inline std::string
subset_label(std::uint32_t m, int n)
{
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < n; ++i) {
                if (!((m >> i) & 1u))
                        continue;
                if (!first)
                        s += ",";
                first = false;
                s += std::to_string(i);
        }
        return s + "}";
}

// ---------------------------------------------------------------------------
// Builders.

inline constexpr int kMaxSubsetQueryElements = 10; // 2^10 subset queries
inline constexpr int kMaxOrderElements = 6;       // 720 orders
inline constexpr int kMaxGraphVertices = 5;       // 1024 graphs

namespace detail {

inline void
check_size(const ProblemKind &kind)
{
        const int n = kind.n;
        if (n < 1)
                throw ConfigError(kind.label() + ": n must be at least 1");
        switch (kind.family) {
        case Family::Search:
        case Family::GtExact:
        case Family::GtAtMost:
                if (uses_defectives(kind.family) && (kind.d < 0 || kind.d > n))
                        throw ConfigError(kind.label() + ": d must lie in 0..n");
                if (n > kMaxSubsetQueryElements)
                        throw CapacityError(kind.label() + ": 2^n subset queries beyond capacity");
                break;
        case Family::Sorting:
        case Family::MinMax:
        case Family::MaxOnly:
                if (n < 2)
                        throw ConfigError(kind.label() + ": need at least two elements to compare");
                if (n > kMaxOrderElements)
                        throw CapacityError(kind.label() + ": n! inputs beyond capacity");
                break;
        case Family::Connectivity:
                if (n < 2)
                        throw ConfigError(kind.label() + ": need at least two vertices");
                if (n > kMaxGraphVertices)
                        throw CapacityError(kind.label() + ": 2^C(n,2) graphs beyond capacity");
                break;
        }
}

inline ProblemSpec
build_subset_problem(const ProblemKind &kind)
{
        const int n = kind.n;
        std::vector<std::uint32_t> masks;
        if (kind.family == Family::Search) {
                for (int i = 0; i < n; ++i)
                        masks.push_back(1u << i);
        } else {
                masks = defective_sets(n, kind.d, kind.family == Family::GtExact);
        }
        std::vector<std::string> inputs, queries;
        for (auto m : masks)
                inputs.push_back(kind.family == Family::Search ? std::to_string(std::countr_zero(m))
                                                               : subset_label(m, n));
        for (std::uint32_t a = 0; a < (1u << n); ++a)
                queries.push_back(subset_label(a, n));
        std::vector<int> target(masks.size());
        std::iota(target.begin(), target.end(), 0);
        // For search the singleton {x} is the input, so both oracles are "A meets X".
        auto oracle = [masks](int x, int q) { return (masks[x] & static_cast<std::uint32_t>(q)) != 0; };
        return ProblemSpec(kind.label(), std::move(inputs), std::move(queries), oracle, std::move(target),
                           ProblemParams{family_name(kind.family), n, kind.d});
}

inline ProblemSpec
build_order_problem(const ProblemKind &kind)
{
        const int n = kind.n;
        const auto orders = all_orders(n);
        const auto pairs = pair_list(n);
        std::vector<std::vector<int>> pos;
        std::vector<std::string> inputs, queries;
        std::vector<int> target;
        for (const auto &o : orders) {
                pos.push_back(positions(o));
                inputs.push_back(order_label(o));
                switch (kind.family) {
                case Family::Sorting: target.push_back(static_cast<int>(target.size())); break;
                case Family::MinMax: target.push_back(o.back() * n + o.front()); break;
                default: target.push_back(o.back()); break;
                }
        }
        for (auto [i, j] : pairs)
                queries.push_back(std::to_string(i) + "<" + std::to_string(j) + "?");
        auto oracle = [pos, pairs](int x, int q) { return pos[x][pairs[q].first] < pos[x][pairs[q].second]; };
        return ProblemSpec(kind.label(), std::move(inputs), std::move(queries), oracle, std::move(target),
                           ProblemParams{family_name(kind.family), n, 0});
}

inline ProblemSpec
build_connectivity(const ProblemKind &kind)
{
        const int n = kind.n;
        const auto pairs = pair_list(n);
        const int graphs = 1 << pairs.size();
        std::vector<std::string> inputs, queries;
        std::vector<int> target;
        for (int g = 0; g < graphs; ++g) {
                inputs.push_back(graph_label(static_cast<EdgeMask>(g), n));
                target.push_back(is_connected(static_cast<EdgeMask>(g), n) ? 1 : 0);
        }
        for (auto [i, j] : pairs)
                queries.push_back(pair_label(i, j));
        auto oracle = [](int x, int q) { return (x >> q) & 1; };
        return ProblemSpec(kind.label(), std::move(inputs), std::move(queries), oracle, std::move(target),
                           ProblemParams{family_name(kind.family), n, 0});
}

} // namespace detail

inline ProblemSpec
build_problem(const ProblemKind &kind)
{
        detail::check_size(kind);
        switch (kind.family) {
        case Family::Search:
        case Family::GtExact:
        case Family::GtAtMost: return detail::build_subset_problem(kind);
        case Family::Sorting:
        case Family::MinMax:
        case Family::MaxOnly: return detail::build_order_problem(kind);
        case Family::Connectivity: return detail::build_connectivity(kind);
        }
        throw ConfigError("unknown family");
}

// Recover the family tag of a built spec.
inline std::optional<ProblemKind>
kind_of(const ProblemSpec &spec)
{
        auto f = parse_family(spec.params().family);
        if (!f)
                return std::nullopt;
        return ProblemKind{*f, spec.params().n, spec.params().d};
}

// ---------------------------------------------------------------------------
// Closed-form values.

struct Prediction {
        enum class Kind { Exact, Interval };

        Kind kind = Kind::Exact;
        int lower = 0;
        int upper = 0;
        std::string source;

        static Prediction
        exact(int v, std::string source)
        {
                return {Kind::Exact, v, v, std::move(source)};
        }

        static Prediction
        interval(int lo, int hi, std::string source)
        {
                return {Kind::Interval, lo, hi, std::move(source)};
        }

        bool is_exact() const { return kind == Kind::Exact; }
        bool admits(int v) const { return lower <= v && v <= upper; }

        std::string
        describe() const
        {
                if (is_exact())
                        return std::to_string(lower);
                return "[" + std::to_string(lower) + "," + std::to_string(upper) + "]";
        }
};

// Certificate complexity of "at most d defectives": one singleton query per defective.
inline int
gt_atmost_certificate_value(int n, int d)
{
        return std::min(d, n);
}

inline int
half_ceil_minus_two(int n)
{
        return (3 * n + 1) / 2 - 2;
}

// D_k for the families with a closed form. `deterministic` is the unrestricted
// game value D, needed where no closed form for D exists (group testing,
// sorting beyond one change); omitting it there raises DependencyError.
inline Prediction
predicted_value(const ProblemKind &kind, int k, std::optional<int> deterministic = std::nullopt)
{
        if (k < 0)
                throw Error("predicted_value: negative k");
        const int n = kind.n;
        auto need_d = [&]() {
                if (!deterministic)
                        throw DependencyError(kind.label() + ": prediction needs the unrestricted value D");
                return *deterministic;
        };
        switch (kind.family) {
        case Family::Search:
                return Prediction::exact(std::min(k + 1, ceil_log2(n)), "search: min{k+1, ceil(log2 n)}");
        case Family::GtExact:
                return Prediction::exact(std::min(k + 1, need_d()), "gt-exact: min{k+1, D}");
        case Family::GtAtMost: {
                const int d = kind.d;
                // (d-1)*2^k, saturating; d >= 1 is implicit in the statement
                const std::int64_t threshold = (d - 1) * (std::int64_t{1} << std::min(k, 40));
                // k+d can exceed D itself (n=2, d=1, k=2); past D only the interval holds
                if (d >= 1 && n > threshold && (!deterministic || k + d <= *deterministic))
                        return Prediction::exact(k + d, "gt-atmost: k+d when n > (d-1)2^k");
                const int D = need_d();
                return Prediction::interval(std::min(k + 1, D), std::min(k + d, D),
                                            "gt-atmost: [min{k+1,D}, min{k+d,D}]");
        }
        case Family::Sorting:
                if (k == 0)
                        return Prediction::exact(n - 1, "sorting: D_0 = n-1");
                if (k == 1)
                        return Prediction::exact(half_ceil_minus_two(n), "sorting: D_1 = ceil(3n/2)-2");
                {
                        const int D = need_d();
                        return Prediction::interval(std::max(half_ceil_minus_two(n), std::min(k + 1, D)), D,
                                                    "sorting: [max{ceil(3n/2)-2, min{k+1,D}}, D]");
                }
        case Family::MaxOnly: return Prediction::exact(n - 1, "maxonly: n-1 for every k");
        case Family::MinMax:
                return Prediction::exact(std::min(n + k - 1, half_ceil_minus_two(n)),
                                         "minmax: min{n+k-1, ceil(3n/2)-2}");
        case Family::Connectivity: {
                const int all = static_cast<int>(binomial(n, 2));
                if (k == 0)
                        return Prediction::exact(n * n / 4, "connectivity: D_0 = floor(n^2/4)");
                if (k >= n - 2)
                        return Prediction::exact(all, "connectivity: evasive, C(n,2) for k >= n-2");
                const int t = static_cast<int>(turan_number(n, k + 2));
                return Prediction::interval(t, std::min(t + n - 1, all),
                                            "connectivity: [t(n,k+2), t(n,k+2)+n-1]");
        }
        }
        throw ConfigError("unknown family");
}

} // namespace kchange
