#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmlab/ntm.hpp"
#include "pmlab/pm.hpp"
#include "pmlab/trichoice.hpp"

namespace pmlab {

// Line-oriented machine files:
//
//   # comment
//   [machine]
//   kind=pm                      (or kind=ntm)
//   [states_L] / [states_R]      (pm)     [states]   (ntm)
//   [initial]
//   [accepting]
//   [input_alphabet]
//   [tape_alphabet]
//   [delta]
//   p x q y                      (pm)     p x q y d  (ntm, d in {L, R})
//
// Tokens are whitespace separated. `^`, `_` and `$` name the left endmarker,
// the blank and the right endmarker. Other tokens use [A-Za-z0-9.[],/];
// inside a longer token the three reserved characters are allowed too, so
// compiled names such as `L[q0,^,q1,_,R]` stay valid.

using AnyMachine = std::variant<NtmSpec, PmSpec>;

class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<std::string> messages);
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::vector<std::string> messages_;
};

struct ParsedMachine {
    AnyMachine machine;
    // validate_ntm / validate_pm output for the parsed machine.
    std::vector<Diagnostic> diagnostics;
};

// Throws ParseError with line-numbered messages.
ParsedMachine parse_machine(std::string_view text);

// Canonical text: reserved symbols first, pm states L before R, delta lines
// sorted in the order the ids will have after parsing.
std::string serialize_machine(const NtmSpec& spec);
std::string serialize_machine(const PmSpec& spec);
std::string serialize_machine(const AnyMachine& m);

ParsedMachine load_machine_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Input words on the command line: a list separated by commas or spaces, or
// else one symbol per character. Throws ModelError on unknown symbols.
Word parse_input(std::string_view text, const NameTable& symbols);
std::string format_input(const Word& input, const NameTable& symbols);

// `state/symbol`.
std::string format_choice(const PmSpec& spec, const PmChoice& c);
std::string format_trichoice(const PmSpec& spec, Time t, const Trichoice& tri);

// `t=<t> w=<choice|-> p=<choice|-> c=<choice>`, one line per trichoice,
// ascending t, lines sorted within each t.
std::string format_relations(const PmSpec& spec, const std::vector<Relation>& relations);

// FNV-1a, rendered as 16 hex digits.
std::string stable_hash(std::string_view text);

}  // namespace pmlab
