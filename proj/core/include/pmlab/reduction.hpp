#pragma once

#include <string>
#include <vector>

#include "pmlab/ntm.hpp"
#include "pmlab/pm.hpp"

namespace pmlab {

// Compiles a single-tape NTM running in n^k + k steps into a periodic
// machine. The periodic machine tracks the NTM's last displacement in its
// normal states p.L / p.R and follows the NTM move for move while the
// direction holds. A mid-tape reversal (p, x, q, y, d) is deferred:
//
//   1. write compound symbol [p,x,q,y,d] and enter compound state d[p,x,q,y,d],
//   2. skip to the tape end in direction d,
//   3. flip to the reverse compound state at the endmarker,
//   4. skip back to the compound symbol,
//   5. overwrite it with y and enter q in the new direction.
//
// Rules are emitted for every (p, x, q, y) in Q x Y x Q x Y, both directions,
// so the compiled machine has |Q| + 2 |Q|^2 |Y|^2 states per side.
struct ReductionOutput {
    PmSpec pm;
    unsigned k = 1;
    // NTM symbol id -> periodic machine symbol id.
    std::vector<SymbolId> symbol_map;
    // NTM state id -> normal state p.L / p.R.
    std::vector<StateId> left_state;
    std::vector<StateId> right_state;

    Time pi_for(Time n) const;
    Time time_bound_for(Time n) const;
    // Geometry the compiled machine runs on for an input of length n. For
    // k = 0 the input is never read and the tape is just the two endmarkers.
    TapeGeometry geometry_for(Time n) const;
    // Maps an NTM input word into the compiled machine's symbol ids (empty
    // for k = 0, matching geometry_for).
    Word pm_input(const Word& ntm_input) const;
};

// Throws ModelError("invalid source machine: ...") when validate_ntm reports
// anything, or when the compiled names would collide.
ReductionOutput compile_ntm_to_pm(const NtmSpec& spec, unsigned k);

// Smallest power of two >= n^k + k (0^0 = 1), and 1 for k = 0.
Time pi_policy(Time n, unsigned k);

// (4 (n^k + k) - 1) (n^k + k), with 0^0 = 1.
Time simulation_time_bound(Time n, unsigned k);

// Canonical names used by the compiler.
std::string normal_state_name(const std::string& state, Direction d);
std::string compound_symbol_name(const NtmSpec& spec, const NtmMove& m);
std::string compound_state_name(const NtmSpec& spec, Direction sweep, const NtmMove& m);

}  // namespace pmlab
