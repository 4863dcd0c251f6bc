#pragma once

#include <cstdint>

#include "pmlab/ntm.hpp"
#include "pmlab/pm.hpp"

namespace pmlab {

// Small deterministic PRNG (splitmix64) with its own bounded draws, so that
// generated machines do not depend on the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    // Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    // Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    // True with probability num / den.
    bool chance(std::uint64_t num, std::uint64_t den);

private:
    std::uint64_t state_;
};

// Seed of trial `index` in a campaign: a pure function of both arguments.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

struct PmCaps {
    unsigned states_per_side = 2;
    unsigned input_symbols = 2;
    // Interior symbols beyond the input alphabet and the blank.
    unsigned work_symbols = 1;
    unsigned max_branching = 3;
    bool deterministic = false;
    // Percent of machines that get at least one accepting state.
    unsigned accept_percent = 90;
};

struct NtmCaps {
    unsigned states = 3;
    unsigned input_symbols = 2;
    unsigned work_symbols = 1;
    unsigned max_branching = 3;
    bool deterministic = false;
    unsigned accept_percent = 90;
};

// Sweep-respecting machine: states l0.. (Q_L, l0 initial) and r0.. (Q_R),
// symbols ^ _ $ then inputs a, b, .. then work symbols x, y, ... Each
// reachable condition (p, x) gets 0..max_branching distinct moves (at most
// one when deterministic); (l0, ^) always gets at least one.
PmSpec gen_random_pm(std::uint64_t seed, const PmCaps& caps);

// States q0.. (q0 initial), symbols ^ _ then inputs and work symbols. Moves
// on ^ write ^ and move right; other moves never write ^.
NtmSpec gen_random_ntm(std::uint64_t seed, const NtmCaps& caps);

// Uniform word over the input alphabet with length in [min_len, max_len].
Word gen_input(Rng& rng, const std::vector<SymbolId>& alphabet, Time min_len, Time max_len);

}  // namespace pmlab
