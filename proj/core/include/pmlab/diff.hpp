#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmlab/oracle.hpp"
#include "pmlab/trichoice.hpp"

namespace pmlab {

enum class Verdict { Equal, EngineSuperset, Missing, Inconclusive };

// EQUAL, ENGINE_SUPERSET, MISSING, INCONCLUSIVE.
const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct DiffRow {
    Time t = 0;
    Verdict verdict = Verdict::Equal;
    std::size_t engine_size = 0;
    std::size_t oracle_size = 0;
    // In S_t but not R_t, and in R_t but not S_t.
    std::vector<Trichoice> extra;
    std::vector<Trichoice> missing;
};

struct DiffOptions {
    EnumerationBudget budget;
    std::uint64_t node_cap = kDefaultNodeCap;
};

struct DiffReport {
    std::string machine_hash;
    Word input;
    TapeGeometry geometry;
    Time horizon = 0;
    std::vector<DiffRow> rows;

    bool engine_accepts = false;
    std::optional<Time> engine_accept_time;
    // Empty when the configuration search hit its node cap.
    std::optional<bool> oracle_accepts;
    std::optional<Time> oracle_accept_time;

    std::size_t size_bound = 0;
    std::size_t max_relation_size = 0;
    RunStats stats;

    // Missing rows or oracle-accept without engine-accept.
    bool completeness_violated() const;
    // Engine accepts where the oracle rejects.
    bool acceptance_superset() const;
    // Missing > EngineSuperset > Inconclusive > Equal.
    Verdict verdict() const;
};

// Runs the engine and the oracle to the same horizon and compares them.
// Acceptance on the oracle side uses config_bfs_accepts with bound
// horizon + 1 (the choice at time t is the (t+1)-th move).
DiffReport diff_run(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                    const DiffOptions& options = {});

// `key=value` lines in a fixed order, then one line per extra/missing
// trichoice.
std::string format_report(const PmSpec& spec, const DiffReport& report);

}  // namespace pmlab
