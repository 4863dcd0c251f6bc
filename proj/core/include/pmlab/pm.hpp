#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "pmlab/head_math.hpp"
#include "pmlab/names.hpp"
#include "pmlab/ntm.hpp"

namespace pmlab {

struct PmMove {
    StateId from;
    SymbolId read;
    StateId to;
    SymbolId write;

    auto operator<=>(const PmMove&) const = default;
};

// (q, y). The head displacement is implied by the side of q.
struct PmChoice {
    StateId state;
    SymbolId symbol;

    auto operator<=>(const PmChoice&) const = default;
};

// Periodic (sweeping) machine. `side[q]` partitions the states into Q_L
// (Direction::L) and Q_R (Direction::R); entering a state moves the head in
// that state's direction.
struct PmDefinition {
    NameTable states;
    std::vector<Direction> side;
    NameTable symbols;
    std::vector<SymbolId> input_alphabet;
    SymbolId left_end = 0;
    SymbolId blank = 1;
    SymbolId right_end = 2;
    StateId initial = 0;
    std::vector<StateId> accepting;
    std::vector<PmMove> moves;
};

class PmSpec {
public:
    explicit PmSpec(PmDefinition def);

    const PmDefinition& definition() const { return def_; }
    const NameTable& states() const { return def_.states; }
    const NameTable& symbols() const { return def_.symbols; }
    std::size_t num_states() const { return def_.states.size(); }
    std::size_t num_symbols() const { return def_.symbols.size(); }
    Direction side(StateId q) const { return def_.side.at(q); }
    SymbolId left_end() const { return def_.left_end; }
    SymbolId right_end() const { return def_.right_end; }
    SymbolId blank() const { return def_.blank; }
    StateId initial() const { return def_.initial; }
    const std::vector<PmMove>& moves() const { return def_.moves; }
    const std::vector<SymbolId>& input_alphabet() const { return def_.input_alphabet; }
    const std::vector<StateId>& accepting() const { return def_.accepting; }

    bool is_accepting(StateId q) const { return accepting_mask_.at(q) != 0; }
    bool is_input_symbol(SymbolId x) const { return input_mask_.at(x) != 0; }
    // x in I = Y - {left end, right end}.
    bool is_interior(SymbolId x) const { return x != def_.left_end && x != def_.right_end; }

    // delta(p, x) as stored, sorted. See pm_next_choices for the accepting-state rule.
    std::span<const PmChoice> next_choices(StateId p, SymbolId x) const;

    // |Q'| * |Y|, the number of distinct choices.
    std::size_t choice_universe() const { return num_states() * num_symbols(); }

    bool operator==(const PmSpec& other) const;

private:
    PmDefinition def_;
    std::vector<std::vector<PmChoice>> table_;
    std::vector<char> accepting_mask_;
    std::vector<char> input_mask_;
};

// Per-input workspace: the tape spans cells 0..pi.
struct TapeGeometry {
    Time n = 0;
    Time pi = 1;
    std::optional<unsigned> k_prime;

    // Checks pi is a power of two and n + 1 <= pi.
    static TapeGeometry with_pi(Time n, Time pi);
    // pi := select_pi(n, k_prime).
    static TapeGeometry select(Time n, unsigned k_prime);

    bool operator==(const TapeGeometry&) const = default;
};

std::vector<Diagnostic> validate_pm(const PmSpec& spec);

// Moves on conditions the sweep never reaches: (p_L, right end) and
// (p_R, left end). Legal, but dead.
std::vector<Diagnostic> lint_pm(const PmSpec& spec);

// Smallest power of two in [n + 1, n^k' + k']; throws ModelError when the
// interval holds none.
Time select_pi(Time n, unsigned k_prime);

// X_0..X_pi: left end, input, blanks, right end.
Word initial_tape(const Word& input, const TapeGeometry& geometry, const PmSpec& spec);

// delta(p, x); empty for accepting p regardless of declared moves.
std::span<const PmChoice> pm_next_choices(const PmSpec& spec, StateId p, SymbolId x);

bool is_valid_pm_computation(std::span<const PmChoice> choices, const Word& input, const TapeGeometry& geometry,
                             const PmSpec& spec);

}  // namespace pmlab
