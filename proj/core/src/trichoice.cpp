#include "pmlab/trichoice.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace pmlab {

namespace {

const Relation kEmptyRelation;

bool executes(const Relation& r, const PmChoice& c) {
    return std::any_of(r.begin(), r.end(), [&](const Trichoice& t) { return t.cur == c; });
}

bool contains(const std::vector<PmChoice>& sorted, const PmChoice& c) {
    return std::binary_search(sorted.begin(), sorted.end(), c);
}

void sort_unique(std::vector<PmChoice>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

const Relation& RelationSeries::at(Time t) const {
    if (t < 0) throw std::out_of_range("negative time");
    if (t >= static_cast<Time>(relations.size())) return kEmptyRelation;
    return relations[static_cast<std::size_t>(t)];
}

const char* to_string(CaseId c) {
    switch (c) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV: return "IV";
    }
    return "?";
}

EngineCounters& EngineCounters::operator+=(const EngineCounters& o) {
    lambda_evaluations += o.lambda_evaluations;
    lambda_steps += o.lambda_steps;
    case_checks += o.case_checks;
    deletions += o.deletions;
    sweeps += o.sweeps;
    pivots += o.pivots;
    advances += o.advances;
    return *this;
}

std::uint64_t relation_size_bound(const PmSpec& spec) {
    const std::uint64_t c = spec.choice_universe();
    return c + c * c + c * c * c;
}

std::vector<PmChoice> executed_choices(const Relation& r) {
    std::vector<PmChoice> out;
    out.reserve(r.size());
    for (const auto& t : r) out.push_back(t.cur);
    sort_unique(out);
    return out;
}

Relation bootstrap_s0(const PmSpec& spec, const TapeGeometry&) {
    Relation s0;
    for (const auto& c : pm_next_choices(spec, spec.initial(), spec.left_end())) s0.insert({std::nullopt, std::nullopt, c});
    return s0;
}

SubrelationSeries init_pivot_delta(std::span<const Relation> series, const PmChoice& pivot) {
    if (series.empty()) throw ModelError("pivot not executed at t: empty series");
    SubrelationSeries delta;
    delta.deltas.assign(series.begin(), series.end() - 1);
    Relation last;
    for (const auto& t : series.back())
        if (t.cur == pivot) last.insert(t);
    if (last.empty()) throw ModelError("pivot not executed at t");
    delta.deltas.push_back(std::move(last));
    return delta;
}

std::vector<PmChoice> lambda_closure(const SubrelationSeries& delta, Time i, const PmChoice& c, Time m,
                                     EngineCounters* counters) {
    if (i < 0 || m < 0 || i + m > delta.horizon()) throw std::out_of_range("lambda_closure: horizon exceeded");
    if (counters) ++counters->lambda_evaluations;
    std::vector<PmChoice> frontier;
    if (counters) ++counters->lambda_steps;
    if (executes(delta.deltas[static_cast<std::size_t>(i)], c)) frontier.push_back(c);
    std::vector<PmChoice> next;
    for (Time s = 1; s <= m && !frontier.empty(); ++s) {
        if (counters) ++counters->lambda_steps;
        next.clear();
        for (const auto& t : delta.deltas[static_cast<std::size_t>(i + s)])
            if (t.pred && contains(frontier, *t.pred)) next.push_back(t.cur);
        sort_unique(next);
        frontier.swap(next);
    }
    return frontier;
}

std::optional<CaseId> ill_referenced_case(const SubrelationSeries& delta, Time j, const Trichoice& tri, Time t,
                                          const TapeGeometry& geometry, EngineCounters* counters) {
    if (counters) ++counters->case_checks;
    const Time pi = geometry.pi;

    // I: the predecessor must be executed at j - 1 and lead to cur.
    if (j > 0) {
        if (!tri.pred || !contains(lambda_closure(delta, j - 1, *tri.pred, 1, counters), tri.cur)) return CaseId::I;
    }
    // II: cur must have some executed successor.
    if (j < t && lambda_closure(delta, j, tri.cur, 1, counters).empty()) return CaseId::II;
    // III: cur must descend from the writer.
    if (j > pi) {
        const Time w = *last_write_time(j, pi);
        if (!tri.writer || !contains(lambda_closure(delta, w, *tri.writer, j - w, counters), tri.cur))
            return CaseId::III;
    }
    // IV: some descendant at the next reread must read what cur wrote.
    const Time r = next_read_time(j, pi);
    if (r <= t) {
        const auto readers = lambda_closure(delta, j, tri.cur, r - j, counters);
        const auto& at_r = delta.deltas[static_cast<std::size_t>(r)];
        const bool read = std::any_of(at_r.begin(), at_r.end(), [&](const Trichoice& x) {
            return x.writer && *x.writer == tri.cur && contains(readers, x.cur);
        });
        if (!read) return CaseId::IV;
    }
    return std::nullopt;
}

SubrelationSeries lfp(SubrelationSeries delta, const TapeGeometry& geometry, const LfpOptions& options) {
    const Time t = delta.horizon();
    if (t < 0) return delta;
    std::mt19937_64 rng(options.shuffle_seed.value_or(0));
    std::vector<Time> times(static_cast<std::size_t>(t) + 1);
    std::iota(times.begin(), times.end(), Time{0});
    std::vector<Trichoice> snapshot;

    bool fixpoint = false;
    while (!fixpoint) {
        fixpoint = true;
        if (options.counters) ++options.counters->sweeps;
        if (options.shuffle_seed) std::shuffle(times.begin(), times.end(), rng);
        for (Time j : times) {
            auto& dj = delta.deltas[static_cast<std::size_t>(j)];
            snapshot.assign(dj.begin(), dj.end());
            if (options.shuffle_seed) std::shuffle(snapshot.begin(), snapshot.end(), rng);
            for (const auto& tri : snapshot) {
                if (ill_referenced_case(delta, j, tri, t, geometry, options.counters)) {
                    dj.erase(tri);
                    fixpoint = false;
                    if (options.counters) ++options.counters->deletions;
                }
            }
        }
    }
    return delta;
}

Relation advance(std::span<const Relation> series, const PmSpec& spec, const Word& input,
                 const TapeGeometry& geometry, EngineCounters* counters) {
    Relation next;
    if (series.empty()) throw ModelError("advance: empty series");
    if (counters) ++counters->advances;
    const auto& st = series.back();
    if (st.empty()) return next;
    const Time t = static_cast<Time>(series.size()) - 1;
    const Time pi = geometry.pi;

    if (t + 1 <= pi) {
        const Word tape = initial_tape(input, geometry, spec);
        const SymbolId read = tape[static_cast<std::size_t>(t + 1)];
        for (const auto& ct : executed_choices(st)) {
            if (counters) ++counters->pivots;
            for (const auto& c : pm_next_choices(spec, ct.state, read)) next.insert({std::nullopt, ct, c});
        }
        return next;
    }

    const Time w = *last_write_time(t + 1, pi);
    for (const auto& ct : executed_choices(st)) {
        if (counters) ++counters->pivots;
        LfpOptions opts;
        opts.counters = counters;
        const auto fixed = lfp(init_pivot_delta(series, ct), geometry, opts);
        for (const auto& writer : executed_choices(fixed.deltas[static_cast<std::size_t>(w)]))
            for (const auto& c : pm_next_choices(spec, ct.state, writer.symbol)) next.insert({writer, ct, c});
    }
    return next;
}

RelationSeries run_relations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                             RunStats* stats) {
    if (horizon < 0) throw ModelError("negative horizon");
    RelationSeries out{geometry, {}};
    const auto bound = relation_size_bound(spec);
    auto check = [&](const Relation& r, Time t) {
        if (r.size() > bound)
            throw std::logic_error("relation size bound violated at t=" + std::to_string(t));
    };
    out.relations.push_back(bootstrap_s0(spec, geometry));
    check(out.relations.back(), 0);
    for (Time t = 0; t < horizon && !out.relations.back().empty(); ++t) {
        EngineCounters step;
        auto next = advance(out.relations, spec, input, geometry, &step);
        check(next, t + 1);
        out.relations.push_back(std::move(next));
        if (stats) {
            stats->total += step;
            stats->per_advance.push_back(step);
        }
    }
    return out;
}

AcceptanceResult decide_acceptance(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon) {
    AcceptanceResult res;
    if (spec.is_accepting(spec.initial())) {
        res.accepted = true;
        res.accept_time = -1;
        return res;
    }
    if (horizon < 0) return res;
    std::vector<Relation> series;
    series.push_back(bootstrap_s0(spec, geometry));
    for (Time t = 0;; ++t) {
        const auto& st = series.back();
        if (st.empty()) {
            res.halt_time = t;
            return res;
        }
        for (const auto& tri : st) {
            if (spec.is_accepting(tri.cur.state)) {
                res.accepted = true;
                res.accept_time = t;
                res.witness = tri.cur;
                return res;
            }
        }
        if (t >= horizon) return res;
        series.push_back(advance(series, spec, input, geometry, &res.counters));
    }
}

AcceptanceResult acceptance_of(const RelationSeries& series, const PmSpec& spec) {
    AcceptanceResult res;
    if (spec.is_accepting(spec.initial())) {
        res.accepted = true;
        res.accept_time = -1;
        return res;
    }
    for (std::size_t t = 0; t < series.relations.size(); ++t) {
        const auto& st = series.relations[t];
        if (st.empty()) {
            res.halt_time = static_cast<Time>(t);
            return res;
        }
        for (const auto& tri : st) {
            if (spec.is_accepting(tri.cur.state)) {
                res.accepted = true;
                res.accept_time = static_cast<Time>(t);
                res.witness = tri.cur;
                return res;
            }
        }
    }
    return res;
}

}  // namespace pmlab
