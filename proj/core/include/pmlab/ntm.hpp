#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "pmlab/names.hpp"

namespace pmlab {

using Word = std::vector<SymbolId>;

struct NtmMove {
    StateId from;
    SymbolId read;
    StateId to;
    SymbolId write;
    Direction dir;

    auto operator<=>(const NtmMove&) const = default;
};

// The "next" part (q, y, d) of a move; one choice is executed per time unit.
struct NtmChoice {
    StateId state;
    SymbolId symbol;
    Direction dir;

    auto operator<=>(const NtmChoice&) const = default;
};

// Raw description of a single-tape, right-infinite NTM. The tape alphabet is
// the symbol table itself; the input alphabet is a subset of it.
struct NtmDefinition {
    NameTable states;
    NameTable symbols;
    std::vector<SymbolId> input_alphabet;
    SymbolId left_end = 0;
    SymbolId blank = 1;
    StateId initial = 0;
    std::vector<StateId> accepting;
    std::vector<NtmMove> moves;
};

// Immutable NTM with an O(1) next-choices table. Construction only checks
// that every id resolves; semantic constraints are reported by validate_ntm.
class NtmSpec {
public:
    explicit NtmSpec(NtmDefinition def);

    const NtmDefinition& definition() const { return def_; }
    const NameTable& states() const { return def_.states; }
    const NameTable& symbols() const { return def_.symbols; }
    std::size_t num_states() const { return def_.states.size(); }
    std::size_t num_symbols() const { return def_.symbols.size(); }
    SymbolId left_end() const { return def_.left_end; }
    SymbolId blank() const { return def_.blank; }
    StateId initial() const { return def_.initial; }
    const std::vector<NtmMove>& moves() const { return def_.moves; }
    const std::vector<SymbolId>& input_alphabet() const { return def_.input_alphabet; }
    const std::vector<StateId>& accepting() const { return def_.accepting; }

    bool is_accepting(StateId s) const { return accepting_mask_.at(s) != 0; }
    bool is_input_symbol(SymbolId x) const { return input_mask_.at(x) != 0; }

    // delta(p, x), sorted.
    std::span<const NtmChoice> next_choices(StateId p, SymbolId x) const;

    // Structural equality by names: same tables, same sets.
    bool operator==(const NtmSpec& other) const;

private:
    NtmDefinition def_;
    std::vector<std::vector<NtmChoice>> table_;
    std::vector<char> accepting_mask_;
    std::vector<char> input_mask_;
};

// (alpha, p, beta): tape alpha.beta, state p, head on the first cell of beta
// (blank when beta is empty).
struct CompleteConfiguration {
    Word left;
    StateId state = 0;
    Word right;

    bool operator==(const CompleteConfiguration&) const = default;
    auto operator<=>(const CompleteConfiguration&) const = default;

    // Copy with trailing blanks of `right` removed.
    CompleteConfiguration canonical(SymbolId blank) const;
};

bool equivalent(const CompleteConfiguration& a, const CompleteConfiguration& b, SymbolId blank);

std::vector<Diagnostic> validate_ntm(const NtmSpec& spec);

// (epsilon, q0, |- X).
CompleteConfiguration initial_configuration(const Word& input, const NtmSpec& spec);

// Every C' with C -> C', canonicalized, sorted, without duplicates.
std::vector<CompleteConfiguration> successors(const CompleteConfiguration& c, const NtmSpec& spec);

// c_i.d + ... + c_j.d, or 0 when i > j. Throws std::out_of_range on bad indices.
long displacement_sum(std::span<const NtmChoice> choices, Time i, Time j);

// Maximal i < j with D(i, j) = 0; empty when the cell read at time j + 1 has
// never been written.
std::optional<Time> ntm_writer_time(std::span<const NtmChoice> choices, Time j);

bool is_valid_ntm_computation(std::span<const NtmChoice> choices, const Word& input, const NtmSpec& spec);

// configs[0] must be the initial configuration; throws ModelError("not a
// successor chain") when a step is not a successor.
std::vector<NtmChoice> normalize_run(std::span<const CompleteConfiguration> configs, const NtmSpec& spec);

// Inverse of normalize_run; the result starts with the initial configuration.
std::vector<CompleteConfiguration> denormalize_run(std::span<const NtmChoice> choices, const Word& input,
                                                   const NtmSpec& spec);

}  // namespace pmlab
