#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pmlab/pm.hpp"

namespace pmlab {

// One executed choice together with the two choices it depends on: the
// choice that last wrote the scanned cell and the immediately preceding
// choice. Both references are by value and absent where they do not exist
// (writer for t <= pi, predecessor for t = 0).
struct Trichoice {
    std::optional<PmChoice> writer;
    std::optional<PmChoice> pred;
    PmChoice cur;

    auto operator<=>(const Trichoice&) const = default;
};

using Relation = std::set<Trichoice>;

// S_0..S_T for one (machine, input) pair.
struct RelationSeries {
    TapeGeometry geometry;
    std::vector<Relation> relations;

    // S_t, or the empty relation past the stored end (the series stops at
    // the first empty relation).
    const Relation& at(Time t) const;
};

// Delta_0..Delta_t, each a subset of the corresponding S_i.
struct SubrelationSeries {
    std::vector<Relation> deltas;

    Time horizon() const { return static_cast<Time>(deltas.size()) - 1; }
    bool operator==(const SubrelationSeries&) const = default;
};

enum class CaseId { I, II, III, IV };

const char* to_string(CaseId c);

// Work counters, accumulated across calls when passed in.
struct EngineCounters {
    std::uint64_t lambda_evaluations = 0;
    std::uint64_t lambda_steps = 0;
    std::uint64_t case_checks = 0;
    std::uint64_t deletions = 0;
    std::uint64_t sweeps = 0;
    std::uint64_t pivots = 0;
    std::uint64_t advances = 0;

    // Total elementary work: relation scans inside closures plus case checks.
    std::uint64_t operations() const { return lambda_steps + case_checks; }
    EngineCounters& operator+=(const EngineCounters& o);
};

// C + C^2 + C^3 with C = |Q'| |Y|.
std::uint64_t relation_size_bound(const PmSpec& spec);

// Executed choices of a relation, sorted and distinct.
std::vector<PmChoice> executed_choices(const Relation& r);

// S_0 = {(-, -, c0) | c0 in delta(q0L, left end)}.
Relation bootstrap_s0(const PmSpec& spec, const TapeGeometry& geometry);

// Delta_i = S_i for i < t; Delta_t keeps only trichoices executing `pivot`.
// Throws ModelError("pivot not executed at t").
SubrelationSeries init_pivot_delta(std::span<const Relation> series, const PmChoice& pivot);

// Choices reachable from `c` at time i by m predecessor-successor links in
// delta (lambda^m). Throws std::out_of_range when i + m exceeds the horizon.
std::vector<PmChoice> lambda_closure(const SubrelationSeries& delta, Time i, const PmChoice& c, Time m,
                                     EngineCounters* counters = nullptr);

// First ill-referenced case (I, II, III, IV in that order) that applies to
// `tri` in delta_j with horizon t, or empty.
std::optional<CaseId> ill_referenced_case(const SubrelationSeries& delta, Time j, const Trichoice& tri, Time t,
                                          const TapeGeometry& geometry, EngineCounters* counters = nullptr);

struct LfpOptions {
    // When set, every sweep visits times and trichoices in an order drawn
    // from this seed instead of ascending order.
    std::optional<std::uint64_t> shuffle_seed;
    EngineCounters* counters = nullptr;
};

// Deletes ill-referenced trichoices until a full sweep deletes nothing.
SubrelationSeries lfp(SubrelationSeries delta, const TapeGeometry& geometry, const LfpOptions& options = {});

// S_{t+1} from S_0..S_t, pivoting on every executed choice of S_t.
Relation advance(std::span<const Relation> series, const PmSpec& spec, const Word& input,
                 const TapeGeometry& geometry, EngineCounters* counters = nullptr);

struct RunStats {
    EngineCounters total;
    // Counters of each advance call; per_advance[i] produced S_{i+1}.
    std::vector<EngineCounters> per_advance;
};

// S_0..S_horizon; stops after the first empty relation. Throws
// std::logic_error if some |S_t| exceeds relation_size_bound.
RelationSeries run_relations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                             RunStats* stats = nullptr);

struct AcceptanceResult {
    bool accepted = false;
    // -1 when q0L itself is accepting.
    std::optional<Time> accept_time;
    std::optional<PmChoice> witness;
    // First t with S_t empty, if reached within the horizon.
    std::optional<Time> halt_time;
    EngineCounters counters;
};

// Accepts when q0L is accepting or some executed choice of S_t (t <= horizon)
// enters an accepting state.
AcceptanceResult decide_acceptance(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon);

// The same verdict read off an already computed series (counters left empty).
AcceptanceResult acceptance_of(const RelationSeries& series, const PmSpec& spec);

}  // namespace pmlab
