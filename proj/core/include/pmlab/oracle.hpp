#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pmlab/ntm.hpp"
#include "pmlab/pm.hpp"
#include "pmlab/trichoice.hpp"

namespace pmlab {

// Brute-force ground truth. Everything here steps an explicit tape array and
// tracks, per cell, the choice that last wrote it; nothing uses the head
// formulas or the relation engine.

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnumerationBudget {
    std::uint64_t max_computations = 1'000'000;
    Time max_depth = Time{1} << 20;
    // Distinct configurations kept by the layered searches.
    std::uint64_t max_nodes = 10'000'000;
};

struct Enumeration {
    // Maximal computations: length horizon + 1, or shorter when the branch halts.
    std::vector<std::vector<PmChoice>> computations;
    bool exhausted = true;
};

struct OracleRelations {
    std::vector<Relation> relations;  // R_0..R_horizon
    bool exhausted = true;
    // R_0..R_{exact_levels - 1} are exact even when exhausted is false.
    Time exact_levels = 0;

    const Relation& at(Time t) const;
};

// Depth-first enumeration of every valid computation c_0..c_t' (t' <= horizon).
Enumeration enumerate_computations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                                   const EnumerationBudget& budget = {});

// Trichoices of one computation, replayed on an explicit tape.
std::vector<Trichoice> trichoices_of(std::span<const PmChoice> computation, const PmSpec& spec, const Word& input,
                                     const TapeGeometry& geometry);

// R_t for every t <= horizon built from an enumeration.
OracleRelations relations_from(const Enumeration& e, const PmSpec& spec, const Word& input,
                               const TapeGeometry& geometry, Time horizon);

// R_t for every t <= horizon. Computations that agree on tape, writers, head
// and last choice are merged level by level, which yields the same sets as
// enumerating every computation with far fewer nodes.
OracleRelations oracle_relations(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                                 const EnumerationBudget& budget = {});

// Every computation of length delta.horizon() + 1 whose i-th trichoice lies in
// delta_i for all i.
Enumeration enumerate_composed(const PmSpec& spec, const Word& input, const TapeGeometry& geometry,
                               const SubrelationSeries& delta, const EnumerationBudget& budget = {});

struct BfsResult {
    bool accepted = false;
    // Number of moves after which an accepting state is first entered.
    std::optional<Time> accept_time;
    std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeCap = 10'000'000;

// Breadth-first search over configurations reachable in at most `bound`
// moves. Throws BudgetExceeded above node_cap.
BfsResult config_bfs_accepts(const NtmSpec& spec, const Word& input, Time bound,
                             std::uint64_t node_cap = kDefaultNodeCap);
BfsResult config_bfs_accepts(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time bound,
                             std::uint64_t node_cap = kDefaultNodeCap);

// True when some computation of the NTM runs for more than `bound` moves.
bool ntm_runs_longer_than(const NtmSpec& spec, const Word& input, Time bound,
                          std::uint64_t node_cap = kDefaultNodeCap);

}  // namespace pmlab
