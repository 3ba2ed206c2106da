#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kchange/game.hpp"
#include "kchange/harness/runner.hpp"
#include "kchange/version.hpp"

namespace kchange::harness {

using ordered_json = nlohmann::ordered_json;

inline ordered_json
transcript_json(const ProblemSpec &spec, const Transcript &t)
{
        ordered_json j;
        j["problem"] = t.problem;
        j["k"] = t.k;
        j["initial_input"] = spec.input_label(t.initial_input);
        ordered_json events = ordered_json::array();
        int current = t.initial_input;
        for (std::size_t i = 0; i < t.events.size(); ++i) {
                const Event &e = t.events[i];
                ordered_json ev;
                ev["step"] = i + 1;
                ev["query"] = spec.query_label(e.query);
                if (e.change) {
                        ev["change"] = {{"from", spec.input_label(current)}, {"to", spec.input_label(*e.change)}};
                        current = *e.change;
                } else {
                        ev["change"] = nullptr;
                }
                ev["outcome"] = to_string(e.outcome);
                events.push_back(ev);
        }
        j["events"] = events;
        j["length"] = t.length();
        j["changes"] = t.changes();
        j["final_input"] = spec.input_label(current);
        j["target"] = spec.target(current);
        return j;
}

inline std::string
transcript_text(const ProblemSpec &spec, const Transcript &t)
{
        std::ostringstream out;
        out << t.problem << ", k=" << t.k << ", initial input " << spec.input_label(t.initial_input) << "\n";
        int current = t.initial_input;
        for (std::size_t i = 0; i < t.events.size(); ++i) {
                const Event &e = t.events[i];
                out << "  " << (i + 1) << ". " << spec.query_label(e.query);
                if (e.change) {
                        out << "  [change " << spec.input_label(current) << " -> " << spec.input_label(*e.change)
                            << "]";
                        current = *e.change;
                }
                out << "  " << to_string(e.outcome) << "\n";
        }
        out << "  " << t.length() << (t.length() == 1 ? " query, " : " queries, ") << t.changes()
            << (t.changes() == 1 ? " change" : " changes") << ", final input "
            << spec.input_label(current) << "\n";
        return out.str();
}

inline ordered_json
prediction_json(const Prediction &p)
{
        ordered_json j;
        j["kind"] = p.is_exact() ? "exact" : "interval";
        j["lower"] = p.lower;
        j["upper"] = p.upper;
        j["source"] = p.source;
        return j;
}

// `timing` off keeps machine-readable output byte-identical across runs.
inline ordered_json
cell_json(const CellResult &c, bool timing)
{
        ordered_json j;
        j["problem"] = family_name(c.kind.family);
        j["n"] = c.kind.n;
        if (uses_defectives(c.kind.family))
                j["d"] = c.kind.d;
        j["k"] = c.k;
        j["exact"] = c.exact;
        if (c.exact)
                j["value"] = c.lo;
        j["value_lo"] = c.lo;
        j["value_hi"] = c.hi;
        j["nodes"] = c.nodes;
        j["millis"] = timing ? static_cast<std::int64_t>(c.millis + 0.5) : 0;
        if (c.predicted) {
                j["predicted"] = prediction_json(*c.predicted);
                j["matches_prediction"] = c.exact && c.predicted->admits(c.lo);
        }
        j["version"] = kVersion;
        return j;
}

inline std::string
csv_header()
{
        return "problem,n,d,k,value_lo,value_hi,exact,nodes,millis";
}

inline std::string
cell_csv(const CellResult &c, bool timing)
{
        std::ostringstream out;
        out << family_name(c.kind.family) << ',' << c.kind.n << ',';
        if (uses_defectives(c.kind.family))
                out << c.kind.d;
        out << ',' << c.k << ',' << c.lo << ',' << c.hi << ',' << (c.exact ? "true" : "false") << ',' << c.nodes
            << ',' << (timing ? static_cast<std::int64_t>(c.millis + 0.5) : 0);
        return out.str();
}

inline std::string
cell_text(const CellResult &c, bool timing)
{
        std::ostringstream out;
        out << c.kind.label() << " k=" << c.k << ": ";
        if (c.exact)
                out << c.lo;
        else
                out << "INCOMPLETE [" << c.lo << "," << c.hi << "]";
        if (c.predicted)
                out << "  (predicted " << c.predicted->describe() << ", " << c.predicted->source << ")";
        out << "  nodes=" << c.nodes;
        if (timing) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.1f", c.millis);
                out << " ms=" << buf;
        }
        if (c.from_cache)
                out << " [cached]";
        return out.str();
}

} // namespace kchange::harness
