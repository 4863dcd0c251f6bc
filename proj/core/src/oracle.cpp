#include "pmlab/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace pmlab {

namespace {

struct Cell {
    SymbolId symbol;
    std::optional<PmChoice> writer;

    auto operator<=>(const Cell&) const = default;
};

// One branch of a periodic machine run on an explicit tape.
struct Walker {
    std::vector<Cell> tape;
    Time head = 0;
    std::optional<PmChoice> prev;

    auto operator<=>(const Walker&) const = default;

    static Walker start(const PmSpec& spec, const Word& input, const TapeGeometry& geometry) {
        Walker w;
        for (auto x : initial_tape(input, geometry, spec)) w.tape.push_back({x, std::nullopt});
        return w;
    }

    StateId state(const PmSpec& spec) const { return prev ? prev->state : spec.initial(); }

    bool on_tape() const { return head >= 0 && head < static_cast<Time>(tape.size()); }

    std::span<const PmChoice> options(const PmSpec& spec) const {
        if (!on_tape()) return {};
        return pm_next_choices(spec, state(spec), tape[static_cast<std::size_t>(head)].symbol);
    }

    Trichoice trichoice(const PmChoice& c) const { return {tape[static_cast<std::size_t>(head)].writer, prev, c}; }

    void step(const PmSpec& spec, const PmChoice& c) {
        tape[static_cast<std::size_t>(head)] = {c.symbol, c};
        prev = c;
        head += offset(spec.side(c.state));
    }
};

// Shared depth-first search. `admit` filters trichoices at each time;
// `full_only` keeps only leaves of length horizon + 1.
Enumeration depth_first(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                        const EnumerationBudget& budget, bool full_only,
                        const std::function<bool(Time, const Trichoice&)>& admit) {
    Enumeration out;
    if (horizon > budget.max_depth) {
        horizon = budget.max_depth;
        out.exhausted = false;
    }
    if (horizon < 0) return out;
    std::vector<PmChoice> path;
    bool stop = false;

    auto leaf = [&]() {
        if (path.empty()) return;
        if (full_only && static_cast<Time>(path.size()) != horizon + 1) return;
        if (out.computations.size() >= budget.max_computations) {
            out.exhausted = false;
            stop = true;
            return;
        }
        out.computations.push_back(path);
    };

    std::function<void(const Walker&)> dfs = [&](const Walker& w) {
        const Time t = static_cast<Time>(path.size());
        if (t > horizon) return leaf();
        auto options = w.options(spec);
        bool extended = false;
        for (const auto& c : options) {
            if (stop) return;
            if (admit && !admit(t, w.trichoice(c))) continue;
            extended = true;
            Walker child = w;
            child.step(spec, c);
            path.push_back(c);
            dfs(child);
            path.pop_back();
        }
        if (!extended) leaf();
    };
    dfs(Walker::start(spec, input, geometry));
    return out;
}

}  // namespace

const Relation& OracleRelations::at(Time t) const {
    static const Relation empty;
    if (t < 0 || t >= static_cast<Time>(relations.size())) return empty;
    return relations[static_cast<std::size_t>(t)];
}

Enumeration enumerate_computations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                                   const EnumerationBudget& budget) {
    return depth_first(spec, input, geometry, horizon, budget, false, nullptr);
}

Enumeration enumerate_composed(const PmSpec& spec, const Word& input, const TapeGeometry& geometry,
                               const SubrelationSeries& delta, const EnumerationBudget& budget) {
    auto admit = [&](Time t, const Trichoice& tri) { return delta.deltas[static_cast<std::size_t>(t)].count(tri) > 0; };
    return depth_first(spec, input, geometry, delta.horizon(), budget, true, admit);
}

std::vector<Trichoice> trichoices_of(std::span<const PmChoice> computation, const PmSpec& spec, const Word& input,
                                     const TapeGeometry& geometry) {
    std::vector<Trichoice> out;
    out.reserve(computation.size());
    Walker w = Walker::start(spec, input, geometry);
    for (const auto& c : computation) {
        if (!w.on_tape()) throw ModelError("computation runs off the tape");
        out.push_back(w.trichoice(c));
        w.step(spec, c);
    }
    return out;
}

OracleRelations relations_from(const Enumeration& e, const PmSpec& spec, const Word& input,
                               const TapeGeometry& geometry, Time horizon) {
    OracleRelations out;
    out.relations.assign(static_cast<std::size_t>(std::max<Time>(horizon, -1) + 1), {});
    out.exhausted = e.exhausted;
    out.exact_levels = e.exhausted ? horizon + 1 : 0;
    for (const auto& comp : e.computations) {
        auto tris = trichoices_of(comp, spec, input, geometry);
        for (std::size_t i = 0; i < tris.size() && static_cast<Time>(i) <= horizon; ++i)
            out.relations[i].insert(tris[i]);
    }
    return out;
}

OracleRelations oracle_relations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                                 const EnumerationBudget& budget) {
    OracleRelations out;
    if (horizon < 0) return out;
    out.relations.assign(static_cast<std::size_t>(horizon) + 1, {});
    std::set<Walker> level{Walker::start(spec, input, geometry)};
    std::uint64_t nodes = 1;
    for (Time t = 0; t <= horizon; ++t) {
        std::set<Walker> next;
        auto& rt = out.relations[static_cast<std::size_t>(t)];
        bool over = false;
        for (const auto& w : level) {
            for (const auto& c : w.options(spec)) {
                rt.insert(w.trichoice(c));
                if (t == horizon || over) continue;
                Walker child = w;
                child.step(spec, c);
                if (next.insert(std::move(child)).second && ++nodes > budget.max_nodes) over = true;
            }
        }
        out.exact_levels = t + 1;
        if (over) {
            out.exhausted = false;
            return out;
        }
        if (next.empty()) {
            out.exact_levels = horizon + 1;
            return out;
        }
        level.swap(next);
    }
    return out;
}

BfsResult config_bfs_accepts(const NtmSpec& spec, const Word& input, Time bound, std::uint64_t node_cap) {
    BfsResult res;
    std::set<CompleteConfiguration> visited;
    std::vector<CompleteConfiguration> frontier{initial_configuration(input, spec)};
    visited.insert(frontier.front());
    res.nodes = 1;
    for (Time d = 0; !frontier.empty(); ++d) {
        for (const auto& c : frontier) {
            if (spec.is_accepting(c.state)) {
                res.accepted = true;
                res.accept_time = d;
                return res;
            }
        }
        if (d >= bound) break;
        std::vector<CompleteConfiguration> next;
        for (const auto& c : frontier) {
            for (auto& s : successors(c, spec)) {
                if (!visited.insert(s).second) continue;
                if (++res.nodes > node_cap) throw BudgetExceeded("state-space budget exceeded");
                next.push_back(std::move(s));
            }
        }
        frontier.swap(next);
    }
    return res;
}

BfsResult config_bfs_accepts(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time bound,
                             std::uint64_t node_cap) {
    struct Node {
        Word tape;
        Time head;
        StateId state;
        auto operator<=>(const Node&) const = default;
    };
    BfsResult res;
    std::set<Node> visited;
    std::vector<Node> frontier{{initial_tape(input, geometry, spec), 0, spec.initial()}};
    visited.insert(frontier.front());
    res.nodes = 1;
    for (Time d = 0; !frontier.empty(); ++d) {
        for (const auto& n : frontier) {
            if (spec.is_accepting(n.state)) {
                res.accepted = true;
                res.accept_time = d;
                return res;
            }
        }
        if (d >= bound) break;
        std::vector<Node> next;
        for (const auto& n : frontier) {
            if (n.head < 0 || n.head >= static_cast<Time>(n.tape.size())) continue;
            for (const auto& c : pm_next_choices(spec, n.state, n.tape[static_cast<std::size_t>(n.head)])) {
                Node child = n;
                child.tape[static_cast<std::size_t>(n.head)] = c.symbol;
                child.state = c.state;
                child.head += offset(spec.side(c.state));
                if (!visited.insert(child).second) continue;
                if (++res.nodes > node_cap) throw BudgetExceeded("state-space budget exceeded");
                next.push_back(std::move(child));
            }
        }
        frontier.swap(next);
    }
    return res;
}

bool ntm_runs_longer_than(const NtmSpec& spec, const Word& input, Time bound, std::uint64_t node_cap) {
    std::set<CompleteConfiguration> level{initial_configuration(input, spec)};
    std::uint64_t nodes = 1;
    for (Time d = 0; d <= bound; ++d) {
        std::set<CompleteConfiguration> next;
        for (const auto& c : level)
            for (auto& s : successors(c, spec))
                if (next.insert(std::move(s)).second && ++nodes > node_cap)
                    throw BudgetExceeded("state-space budget exceeded");
        if (next.empty()) return false;
        level.swap(next);
    }
    return true;
}

}  // namespace pmlab
