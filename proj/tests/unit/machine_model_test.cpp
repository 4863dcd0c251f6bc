#include <gtest/gtest.h>

#include "pmlab/generators.hpp"
#include "pmlab/ntm.hpp"
#include "test_support.hpp"

using namespace pmlab;
using namespace pmlab::testing;

namespace {

const char* kTwoState = R"(
[machine]
kind=ntm
[states]
q0 q1 q2
[initial]
q0
[accepting]
q2
[input_alphabet]
a b
[tape_alphabet]
^ _ a b c
[delta]
q0 ^ q0 ^ R
q0 a q1 c R
q0 a q0 b R
q1 b q1 a L
q1 c q0 c R
q0 _ q2 a R
q0 b q1 b R
q1 _ q1 c L
)";

NtmChoice ch(const NtmSpec& s, const std::string& q, const std::string& y, Direction d) {
    return {st(s, q), sy(s, y), d};
}

std::vector<NtmChoice> dirs(std::initializer_list<Direction> ds) {
    std::vector<NtmChoice> v;
    for (auto d : ds) v.push_back({0, 0, d});
    return v;
}

constexpr auto L = Direction::L;
constexpr auto R = Direction::R;

// Exhaustive scan for the maximal i < j with D(i, j) = 0.
std::optional<Time> scan_writer(const std::vector<NtmChoice>& c, Time j) {
    std::optional<Time> best;
    for (Time i = 0; i < j; ++i) {
        long d = 0;
        for (Time k = i; k <= j; ++k) d += offset(c[k].dir);
        if (d == 0) best = i;
    }
    return best;
}

// Random valid run of the flat machine, as configurations.
std::vector<CompleteConfiguration> random_chain(const NtmSpec& spec, const Word& input, Rng& rng, int max_len) {
    FlatNtm m(spec, input);
    std::vector<CompleteConfiguration> chain{m.config()};
    for (int i = 0; i < max_len; ++i) {
        auto opts = m.options();
        std::vector<NtmChoice> legal;
        for (const auto& c : opts)
            if (!(c.dir == Direction::L && m.head == 0)) legal.push_back(c);
        if (legal.empty()) break;
        m.step(legal[rng.below(legal.size())]);
        chain.push_back(m.config());
    }
    return chain;
}

}  // namespace

TEST(ValidateNtm, LeftEndConstraint) {
    auto spec = ntm_from("[machine]\nkind=ntm\n[states]\nq0 q1\n[initial]\nq0\n[accepting]\n[input_alphabet]\na\n"
                         "[tape_alphabet]\na\n[delta]\nq0 ^ q1 ^ L\n");
    auto d = validate_ntm(spec);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].rule, "left-endmarker constraint");
}

TEST(ValidateNtm, CleanWithoutAcceptingStates) {
    auto spec = ntm_from("[machine]\nkind=ntm\n[states]\nq0 q1\n[initial]\nq0\n[accepting]\n[input_alphabet]\na\n"
                         "[tape_alphabet]\na\n[delta]\nq0 ^ q1 ^ R\nq1 a q0 _ R\n");
    EXPECT_TRUE(validate_ntm(spec).empty());
}

TEST(ValidateNtm, MoveFromAcceptingState) {
    auto spec = ntm_from("[machine]\nkind=ntm\n[states]\nq0 q1\n[initial]\nq0\n[accepting]\nq1\n[input_alphabet]\na\n"
                         "[tape_alphabet]\na\n[delta]\nq0 ^ q1 ^ R\nq1 a q0 a R\n");
    auto d = validate_ntm(spec);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].rule, "move from accepting state");
}

TEST(ValidateNtm, EndmarkerWrittenMidTapeAndAlphabetRules) {
    NtmDefinition def;
    def.states.intern("q0");
    def.symbols.intern("^");
    def.symbols.intern("_");
    def.symbols.intern("a");
    def.input_alphabet = {0, 1, 2};
    def.moves = {{0, 2, 0, 0, Direction::R}};
    auto d = validate_ntm(NtmSpec(def));
    std::vector<std::string> rules;
    for (const auto& x : d) rules.push_back(x.rule);
    EXPECT_NE(std::find(rules.begin(), rules.end(), "blank in input alphabet"), rules.end());
    EXPECT_NE(std::find(rules.begin(), rules.end(), "left-endmarker in input alphabet"), rules.end());
    EXPECT_NE(std::find(rules.begin(), rules.end(), "left-endmarker written mid-tape"), rules.end());
}

TEST(Successors, ForcedInitialStep) {
    auto spec = ntm_from(kTwoState);
    auto c0 = initial_configuration(word(spec, "a"), spec);
    auto next = successors(c0, spec);
    ASSERT_EQ(next.size(), 1u);
    EXPECT_TRUE(next[0].left == Word{spec.left_end()});
    EXPECT_EQ(next[0].state, st(spec, "q0"));
    EXPECT_TRUE(next[0].right == word(spec, "a"));
}

TEST(Successors, LeftMovePattern) {
    // (|- a, q1, b beta) with (q1, a, L) in delta(q1, b) gives (|-, q1, a a beta).
    auto spec = ntm_from(kTwoState);
    CompleteConfiguration c{{spec.left_end(), sy(spec, "a")}, st(spec, "q1"), word(spec, "ba")};
    auto next = successors(c, spec);
    ASSERT_EQ(next.size(), 1u);
    EXPECT_TRUE(next[0].left == Word{spec.left_end()});
    EXPECT_TRUE(next[0].right == word(spec, "aaa"));
}

TEST(Successors, BlankScanAgreesWithFlatStepper) {
    auto spec = ntm_from(kTwoState);
    FlatNtm m(spec, {});
    m.step(ch(spec, "q0", "^", R));
    auto next = successors(m.config(), spec);
    std::vector<CompleteConfiguration> expected;
    for (const auto& c : m.options()) {
        FlatNtm n = m;
        if (n.step(c)) expected.push_back(n.config());
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(next, expected);
    ASSERT_EQ(next.size(), 1u);
    EXPECT_TRUE(next[0].left == (Word{spec.left_end(), sy(spec, "a")}));
    EXPECT_TRUE(next[0].right.empty());
}

TEST(Successors, SoundnessAgainstFlatStepperOnRandomMachines) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto spec = gen_random_ntm(rng.next(), NtmCaps{});
        auto input = gen_input(rng, spec.input_alphabet(), 0, 3);
        FlatNtm m(spec, input);
        for (int step = 0; step < 12; ++step) {
            std::vector<CompleteConfiguration> expected;
            std::vector<NtmChoice> legal;
            for (const auto& c : m.options()) {
                FlatNtm n = m;
                if (n.step(c)) {
                    expected.push_back(n.config());
                    legal.push_back(c);
                }
            }
            std::sort(expected.begin(), expected.end());
            expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
            ASSERT_EQ(successors(m.config(), spec), expected) << "trial " << trial << " step " << step;
            if (legal.empty()) break;
            m.step(legal[rng.below(legal.size())]);
        }
    }
}

TEST(Successors, HaltIsEmpty) {
    auto spec = ntm_from(kTwoState);
    CompleteConfiguration c{{spec.left_end()}, st(spec, "q2"), {}};
    EXPECT_TRUE(successors(c, spec).empty());
}

TEST(DisplacementSum, Examples) {
    EXPECT_EQ(displacement_sum(dirs({R, R, L}), 0, 2), 1);
    EXPECT_EQ(displacement_sum(dirs({R, R, L, R}), 3, 2), 0);
    EXPECT_EQ(displacement_sum(dirs({R, L, R, L}), 1, 2), 0);
    EXPECT_THROW(displacement_sum(dirs({R}), 0, 1), std::out_of_range);
}

TEST(NtmWriterTime, Examples) {
    EXPECT_EQ(ntm_writer_time(dirs({R, R, L}), 2), std::optional<Time>(1));
    EXPECT_EQ(ntm_writer_time(dirs({R, R, R}), 2), std::nullopt);
    EXPECT_EQ(ntm_writer_time(dirs({R, L}), 1), std::optional<Time>(0));
}

TEST(NtmWriterTime, MatchesExhaustiveScan) {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<NtmChoice> c;
        const auto len = rng.between(1, 12);
        for (Time i = 0; i < len; ++i) c.push_back({0, 0, rng.chance(1, 2) ? L : R});
        for (Time j = 0; j < len; ++j) EXPECT_EQ(ntm_writer_time(c, j), scan_writer(c, j));
    }
}

TEST(ValidNtmComputation, Examples) {
    auto spec = ntm_from(kTwoState);
    EXPECT_TRUE(is_valid_ntm_computation({}, word(spec, "ab"), spec));
    EXPECT_FALSE(is_valid_ntm_computation(std::vector<NtmChoice>{ch(spec, "q1", "^", R)}, word(spec, "ab"), spec));
    EXPECT_TRUE(is_valid_ntm_computation(std::vector<NtmChoice>{ch(spec, "q0", "^", R)}, word(spec, "ab"), spec));
}

TEST(ValidNtmComputation, AgreesWithFlatStepperAndIsPrefixClosed) {
    // Every sequence of length <= 5 over the machine's choices.
    auto spec = ntm_from(kTwoState);
    std::vector<NtmChoice> universe;
    for (const auto& m : spec.moves()) universe.push_back({m.to, m.write, m.dir});
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    const Word input = word(spec, "ab");
    std::size_t valid = 0;
    std::vector<NtmChoice> seq;
    std::function<void(bool)> rec = [&](bool prefix_valid) {
        const bool v = is_valid_ntm_computation(seq, input, spec);
        FlatNtm m(spec, input);
        bool flat = true;
        for (const auto& c : seq) {
            auto opts = m.options();
            if (std::find(opts.begin(), opts.end(), c) == opts.end() || !m.step(c)) {
                flat = false;
                break;
            }
        }
        ASSERT_EQ(v, flat);
        if (v) {
            ASSERT_TRUE(prefix_valid);
            ++valid;
        }
        if (seq.size() == 5) return;
        for (const auto& c : universe) {
            seq.push_back(c);
            rec(v);
            seq.pop_back();
        }
    };
    rec(true);
    EXPECT_GT(valid, 5u);
}

TEST(NormalizeRun, InitialOnlyGivesEmpty) {
    auto spec = ntm_from(kTwoState);
    std::vector<CompleteConfiguration> chain{initial_configuration(word(spec, "a"), spec)};
    EXPECT_TRUE(normalize_run(chain, spec).empty());
}

TEST(NormalizeRun, DeterministicRunRoundTrip) {
    auto spec = ntm_from(R"(
[machine]
kind=ntm
[states]
q0 q1
[initial]
q0
[accepting]
[input_alphabet]
a
[tape_alphabet]
^ _ a
[delta]
q0 ^ q0 ^ R
q0 a q1 _ R
q1 a q0 a L
q0 _ q1 a R
q1 _ q1 a L
)");
    const Word input = word(spec, "aa");
    FlatNtm m(spec, input);
    std::vector<CompleteConfiguration> chain{m.config()};
    std::vector<NtmChoice> choices;
    for (int i = 0; i < 6; ++i) {
        auto opts = m.options();
        ASSERT_EQ(opts.size(), 1u);
        ASSERT_TRUE(m.step(opts[0]));
        choices.push_back(opts[0]);
        chain.push_back(m.config());
    }
    EXPECT_EQ(normalize_run(chain, spec), choices);
    EXPECT_EQ(denormalize_run(choices, input, spec), chain);
}

TEST(NormalizeRun, SkippedStepIsRejected) {
    auto spec = ntm_from(kTwoState);
    const Word input = word(spec, "aa");
    FlatNtm m(spec, input);
    std::vector<CompleteConfiguration> chain{m.config()};
    m.step(ch(spec, "q0", "^", R));
    m.step(ch(spec, "q1", "c", R));
    chain.push_back(m.config());
    try {
        normalize_run(chain, spec);
        FAIL() << "expected ModelError";
    } catch (const ModelError& e) {
        EXPECT_NE(std::string(e.what()).find("not a successor chain"), std::string::npos);
    }
}

TEST(NormalizeRun, RandomChainsRoundTrip) {
    Rng rng(5);
    for (int machine = 0; machine < 10; ++machine) {
        auto spec = gen_random_ntm(rng.next(), NtmCaps{3, 2, 1, 3, false, 90});
        for (int run = 0; run < 10; ++run) {
            auto input = gen_input(rng, spec.input_alphabet(), 0, 4);
            auto chain = random_chain(spec, input, rng, 50);
            auto choices = normalize_run(chain, spec);
            ASSERT_EQ(denormalize_run(choices, input, spec), chain);
            ASSERT_EQ(normalize_run(denormalize_run(choices, input, spec), spec), choices);
            ASSERT_TRUE(is_valid_ntm_computation(choices, input, spec));
        }
    }
}
