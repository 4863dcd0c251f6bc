#include <gtest/gtest.h>

#include "pmlab/generators.hpp"
#include "pmlab/reduction.hpp"
#include "test_support.hpp"

using namespace pmlab;
using namespace pmlab::testing;

namespace {

const char* kMinimalPm = R"(# one move
[machine]
kind=pm
[states_L]
l0
[states_R]
r0
[initial]
l0
[accepting]
r0
[input_alphabet]
a
[tape_alphabet]
^ _ $ a
[delta]
l0 ^ r0 ^
)";

std::vector<std::string> parse_errors(const std::string& text) {
    try {
        parse_machine(text);
    } catch (const ParseError& e) {
        return e.messages();
    }
    return {};
}

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
    for (const auto& m : msgs)
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(ParseMachine, MinimalPm) {
    auto parsed = parse_machine(kMinimalPm);
    ASSERT_TRUE(std::holds_alternative<PmSpec>(parsed.machine));
    EXPECT_TRUE(parsed.diagnostics.empty());
    const auto& spec = std::get<PmSpec>(parsed.machine);
    ASSERT_EQ(spec.moves().size(), 1u);
    EXPECT_EQ(spec.moves()[0], (PmMove{st(spec, "l0"), spec.left_end(), st(spec, "r0"), spec.left_end()}));
    EXPECT_EQ(spec.side(st(spec, "l0")), Direction::L);
    EXPECT_EQ(spec.side(st(spec, "r0")), Direction::R);
    EXPECT_EQ(spec.symbols().name(spec.left_end()), "^");
    EXPECT_EQ(spec.symbols().name(spec.blank()), "_");
    EXPECT_EQ(spec.symbols().name(spec.right_end()), "$");
    EXPECT_TRUE(spec.is_accepting(st(spec, "r0")));
    EXPECT_EQ(spec.input_alphabet(), (std::vector<SymbolId>{sy(spec, "a")}));
}

TEST(ParseMachine, NtmLeftEndMoveLeftIsFlagged) {
    auto parsed = parse_machine("[machine]\nkind=ntm\n[states]\np q\n[initial]\np\n[accepting]\n"
                                "[input_alphabet]\na\n[tape_alphabet]\n^ _ a\n[delta]\np ^ q ^ L\n");
    ASSERT_TRUE(std::holds_alternative<NtmSpec>(parsed.machine));
    ASSERT_EQ(parsed.diagnostics.size(), 1u);
    EXPECT_EQ(parsed.diagnostics[0].rule, "left-endmarker constraint");
}

TEST(ParseMachine, PmValidatorDiagnosticsAppended) {
    std::string text = kMinimalPm;
    text += "r0 a l0 a\n";
    auto parsed = parse_machine(text);
    std::vector<std::string> rules;
    for (const auto& d : parsed.diagnostics) rules.push_back(d.rule);
    EXPECT_TRUE(any_contains(rules, "move from accepting state"));
    EXPECT_TRUE(any_contains(rules, "mid-tape reversal"));
}

TEST(ParseMachine, LineNumberedErrors) {
    auto msgs = parse_errors("[machine]\nkind=pm\n[states_L]\nl0\n[states_R]\nr0\n[initial]\nl0\n"
                             "[input_alphabet]\na\n[tape_alphabet]\n^ _ $ a\n[delta]\nl0 ^ r0\nl0 z r0 ^\n");
    ASSERT_GE(msgs.size(), 2u);
    EXPECT_TRUE(any_contains(msgs, "line 14"));
    EXPECT_TRUE(any_contains(msgs, "line 15"));
}

TEST(ParseMachine, RejectsMalformedInputs) {
    EXPECT_FALSE(parse_errors("").empty());
    EXPECT_FALSE(parse_errors("[machine]\nkind=tm\n").empty());
    EXPECT_FALSE(parse_errors("[bogus]\n").empty());
    // Bad token characters.
    EXPECT_TRUE(any_contains(parse_errors(std::string(kMinimalPm) + "l0 a r0 a%\n"), "line 18"));
    // Two initial states.
    std::string two_initial = kMinimalPm;
    two_initial.replace(two_initial.find("[initial]\nl0"), 12, "[initial]\nl0 r0");
    EXPECT_FALSE(parse_errors(two_initial).empty());
    // Undeclared input symbol.
    std::string undeclared = kMinimalPm;
    undeclared.replace(undeclared.find("[input_alphabet]\na"), 18, "[input_alphabet]\nb");
    EXPECT_FALSE(parse_errors(undeclared).empty());
    // pm delta lines have four tokens.
    EXPECT_FALSE(parse_errors(std::string(kMinimalPm) + "l0 a l0 a L\n").empty());
}

TEST(ParseMachine, CommentsAndBlankLinesIgnored) {
    std::string text = kMinimalPm;
    text.insert(text.find("[delta]"), "\n   # note\n\n");
    auto a = std::get<PmSpec>(parse_machine(text).machine);
    auto b = std::get<PmSpec>(parse_machine(kMinimalPm).machine);
    EXPECT_EQ(a, b);
}

TEST(Serialize, CanonicalIsAFixedPoint) {
    auto parsed = parse_machine(kMinimalPm);
    const auto canon = serialize_machine(parsed.machine);
    EXPECT_EQ(serialize_machine(parse_machine(canon).machine), canon);
}

TEST(Serialize, GeneratedMachinesRoundTrip) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto pm = gen_random_pm(seed, PmCaps{3, 2, 2, 3, seed % 2 == 0, 90});
        const auto text = serialize_machine(pm);
        auto back = parse_machine(text);
        ASSERT_TRUE(back.diagnostics.empty());
        ASSERT_EQ(std::get<PmSpec>(back.machine), pm) << seed;
        ASSERT_EQ(serialize_machine(back.machine), text);

        auto ntm = gen_random_ntm(seed, NtmCaps{3, 2, 1, 3, false, 90});
        const auto ntext = serialize_machine(ntm);
        auto nback = parse_machine(ntext);
        ASSERT_TRUE(nback.diagnostics.empty());
        ASSERT_EQ(serialize_machine(nback.machine), ntext) << seed;
    }
}

TEST(Serialize, CompiledReductionIsByteIdentical) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto ntm = gen_random_ntm(seed, NtmCaps{2, 1, 0, 2, false, 90});
        const auto golden = serialize_machine(compile_ntm_to_pm(ntm, 1).pm);
        // Compiling twice and re-parsing both give the same bytes.
        EXPECT_EQ(serialize_machine(compile_ntm_to_pm(ntm, 1).pm), golden);
        auto back = parse_machine(golden);
        EXPECT_TRUE(back.diagnostics.empty());
        EXPECT_EQ(serialize_machine(back.machine), golden);
        EXPECT_EQ(std::get<PmSpec>(back.machine), compile_ntm_to_pm(ntm, 1).pm);
    }
}

TEST(Input, ParseAndFormat) {
    auto spec = pm_from(kMinimalPm);
    const auto a = sy(spec, "a");
    EXPECT_EQ(parse_input("aa", spec.symbols()), (Word{a, a}));
    EXPECT_EQ(parse_input("a,a,a", spec.symbols()), (Word{a, a, a}));
    EXPECT_EQ(parse_input("a a", spec.symbols()), (Word{a, a}));
    EXPECT_TRUE(parse_input("", spec.symbols()).empty());
    EXPECT_THROW(parse_input("ab", spec.symbols()), ModelError);
    EXPECT_EQ(parse_input(format_input(Word{a, a}, spec.symbols()), spec.symbols()), (Word{a, a}));
}

TEST(Format, ChoicesAndTrichoices) {
    auto spec = pm_from(kMinimalPm);
    const auto c = pc(spec, "r0", "^");
    EXPECT_EQ(format_choice(spec, c), "r0/^");
    EXPECT_EQ(format_trichoice(spec, 0, Trichoice{std::nullopt, std::nullopt, c}), "t=0 w=- p=- c=r0/^");
    EXPECT_EQ(format_trichoice(spec, 9, Trichoice{c, c, c}), "t=9 w=r0/^ p=r0/^ c=r0/^");
}

TEST(StableHash, KnownVectors) {
    // FNV-1a 64-bit reference values.
    EXPECT_EQ(stable_hash(""), "cbf29ce484222325");
    EXPECT_EQ(stable_hash("a"), "af63dc4c8601ec8c");
    EXPECT_NE(stable_hash("ab"), stable_hash("ba"));
}
