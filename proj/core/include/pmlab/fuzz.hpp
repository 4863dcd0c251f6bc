#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmlab/diff.hpp"
#include "pmlab/generators.hpp"

namespace pmlab {

struct FuzzConfig {
    std::uint64_t master_seed = 1;
    std::uint64_t trials = 100;
    PmCaps caps{3, 2, 1, 3, false, 90};
    Time max_pi = 8;
    Time max_input_length = 4;
    Time horizon_multiplier = 4;
    unsigned k_prime = 2;
    // Bundles and summary.txt go here; nothing is written when empty.
    std::filesystem::path output_dir;
    unsigned jobs = 1;
    DiffOptions diff{{1'000'000, Time{1} << 20, 200'000}, 200'000};
    bool shrink = true;
    // Upper bound on diff_run calls spent shrinking one finding.
    unsigned shrink_attempts = 200;
    // Inconclusive trials are the expensive ones (every re-run exhausts the
    // oracle budget), so they get a smaller allowance.
    unsigned inconclusive_shrink_attempts = 16;
};

// One generated (machine, input, geometry) instance.
struct Trial {
    std::uint64_t index = 0;
    std::uint64_t seed = 0;
    PmSpec spec;
    Word input;
    TapeGeometry geometry;
    Time horizon = 0;
};

// Trial i of a campaign: generator seed trial_seed(master, i); input length
// uniform in [0, max_input_length]; pi uniform over the admissible powers of
// two up to max_pi; horizon = horizon_multiplier * pi.
Trial make_trial(const FuzzConfig& config, std::uint64_t index);

struct Finding {
    std::uint64_t trial = 0;
    Verdict verdict = Verdict::Equal;
    std::string hash;
    PmSpec spec;
    Word input;
    TapeGeometry geometry;
    Time horizon = 0;
    DiffReport report;
    unsigned shrink_steps = 0;
};

struct TrialOutcome {
    std::uint64_t index = 0;
    Verdict verdict = Verdict::Equal;
    DiffReport report;
    std::optional<Finding> finding;
};

struct FuzzSummary {
    std::uint64_t trials = 0;
    std::map<Verdict, std::uint64_t> counts;
    std::uint64_t exhaustive_trials = 0;
    std::uint64_t completeness_violations = 0;
    std::uint64_t acceptance_supersets = 0;
    std::uint64_t size_bound_violations = 0;
    std::size_t max_relation_size = 0;
    // Hashes of persisted bundles, in trial order.
    std::vector<std::string> bundles;

    std::uint64_t count(Verdict v) const;
};

// Greedily drops moves, shortens the input and halves pi while diff_run keeps
// reporting `target`. The result's report is the last successful re-run.
Finding shrink_finding(Finding finding, const FuzzConfig& config);

// Runs every trial (in a pool of config.jobs workers), shrinks non-EQUAL
// findings, then writes bundles and summary.txt sequentially in trial order,
// so the output does not depend on the number of workers. `observer` sees
// each outcome in trial order.
FuzzSummary fuzz(const FuzzConfig& config, const std::function<void(const TrialOutcome&)>& observer = {});

std::string format_summary(const FuzzSummary& summary, const FuzzConfig& config);

// Bundle files: <hash>.pm (canonical machine), <hash>.input (input word on
// one line), <hash>.report (format_report output; carries pi and horizon).
struct Bundle {
    PmSpec spec;
    Word input;
    TapeGeometry geometry;
    Time horizon = 0;
    std::optional<Verdict> recorded;
};

void write_bundle(const std::filesystem::path& dir, const Finding& finding);
Bundle load_bundle(const std::filesystem::path& dir, const std::string& hash);

// Hash of (canonical machine, input, pi, horizon).
std::string finding_hash(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon);

}  // namespace pmlab
