#include <gtest/gtest.h>

#include "pmlab/fuzz.hpp"
#include "pmlab/oracle.hpp"
#include "pmlab/trichoice.hpp"
#include "test_support.hpp"

using namespace pmlab;
using namespace pmlab::testing;

namespace {

// Deterministic, never halts: flips a/b on every rightward sweep.
const char* kFlipper = R"(
[machine]
kind=pm
[states_L]
l0
[states_R]
r0
[initial]
l0
[accepting]
[input_alphabet]
a b
[tape_alphabet]
^ _ $ a b
[delta]
l0 ^ r0 ^
r0 a r0 b
r0 b r0 a
r0 _ r0 _
r0 $ l0 $
l0 a l0 a
l0 b l0 b
l0 _ l0 _
)";

// Two branches at t = 1 write a or b on cell 1; only the a-branch can move
// again when the head comes back at t = 3.
const char* kDiverge = R"(
[machine]
kind=pm
[states_L]
l0 l1
[states_R]
r0
[initial]
l0
[accepting]
l1
[input_alphabet]
a
[tape_alphabet]
^ _ $ a b
[delta]
l0 ^ r0 ^
r0 _ r0 a
r0 _ r0 b
r0 $ l0 $
l0 a l0 a
l0 ^ r0 ^
)";

// Deterministic, accepts on the first return to the left end.
const char* kAcceptAtLeft = R"(
[machine]
kind=pm
[states_L]
l0 l1
[states_R]
r0
[initial]
l0
[accepting]
l1
[input_alphabet]
a
[tape_alphabet]
^ _ $ a
[delta]
l0 ^ r0 ^
r0 a r0 a
r0 _ r0 _
r0 $ l0 $
l0 a l0 a
l0 _ l1 _
)";

Trichoice tri(std::optional<PmChoice> w, std::optional<PmChoice> p, PmChoice c) { return {w, p, c}; }

SubrelationSeries as_delta(const RelationSeries& s, Time t) {
    return SubrelationSeries{std::vector<Relation>(s.relations.begin(), s.relations.begin() + t + 1)};
}

}  // namespace

TEST(Bootstrap, Examples) {
    auto flip = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    EXPECT_EQ(bootstrap_s0(flip, g), (Relation{tri({}, {}, pc(flip, "r0", "^"))}));

    auto none = pm_from("[machine]\nkind=pm\n[states_L]\nl0\n[states_R]\nr0\n[initial]\nl0\n[accepting]\n"
                        "[input_alphabet]\na\n[tape_alphabet]\na\n[delta]\nr0 a r0 a\n");
    EXPECT_TRUE(bootstrap_s0(none, g).empty());

    auto two = pm_from("[machine]\nkind=pm\n[states_L]\nl0\n[states_R]\nr0 r1\n[initial]\nl0\n[accepting]\n"
                       "[input_alphabet]\na\n[tape_alphabet]\na\n[delta]\nl0 ^ r0 ^\nl0 ^ r1 ^\n");
    EXPECT_EQ(bootstrap_s0(two, g).size(), 2u);
}

TEST(InitPivotDelta, Examples) {
    auto spec = pm_from(kDiverge);
    auto s = run_relations(spec, {}, TapeGeometry::with_pi(0, 2), 2);
    ASSERT_EQ(s.relations.size(), 3u);

    auto d0 = init_pivot_delta(std::span(s.relations).first(1), pc(spec, "r0", "^"));
    EXPECT_EQ(d0.deltas.size(), 1u);
    EXPECT_EQ(d0.deltas[0], s.relations[0]);

    auto d1 = init_pivot_delta(std::span(s.relations).first(2), pc(spec, "r0", "a"));
    EXPECT_EQ(d1.deltas[0], s.relations[0]);
    EXPECT_EQ(d1.deltas[1], (Relation{tri({}, pc(spec, "r0", "^"), pc(spec, "r0", "a"))}));

    EXPECT_THROW(init_pivot_delta(std::span(s.relations).first(2), pc(spec, "l0", "$")), ModelError);
}

TEST(LambdaClosure, Examples) {
    auto spec = pm_from(kFlipper);
    auto s = run_relations(spec, word(spec, "ab"), TapeGeometry::with_pi(2, 4), 8);
    auto delta = as_delta(s, 8);
    EXPECT_EQ(lambda_closure(delta, 2, pc(spec, "r0", "a"), 0), std::vector<PmChoice>{pc(spec, "r0", "a")});
    EXPECT_TRUE(lambda_closure(delta, 2, pc(spec, "r0", "b"), 0).empty());
    // Unique chain r0/^ r0/b r0/a r0/_ l0/$: three links from t = 1 reach t = 4.
    EXPECT_EQ(lambda_closure(delta, 1, pc(spec, "r0", "b"), 3), std::vector<PmChoice>{pc(spec, "l0", "$")});
    EXPECT_THROW(lambda_closure(delta, 6, pc(spec, "l0", "a"), 3), std::out_of_range);
}

TEST(IllReferenced, ValidChainHasNone) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    auto s = run_relations(spec, word(spec, "ab"), g, 20);
    auto delta = as_delta(s, 20);
    for (Time j = 0; j <= 20; ++j)
        for (const auto& x : delta.deltas[j]) EXPECT_EQ(ill_referenced_case(delta, j, x, 20, g), std::nullopt);
}

TEST(IllReferenced, CaseOneWhenPredecessorMissing) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    auto delta = as_delta(run_relations(spec, word(spec, "ab"), g, 6), 6);
    delta.deltas[2].clear();
    EXPECT_EQ(ill_referenced_case(delta, 3, *delta.deltas[3].begin(), 6, g), CaseId::I);
    // And the cell-2 gap leaves time 1 without a successor.
    EXPECT_EQ(ill_referenced_case(delta, 1, *delta.deltas[1].begin(), 6, g), CaseId::II);
}

TEST(IllReferenced, CaseFourWhenNoReaderConsumesTheWrite) {
    // t = 3 reads cell 1 again (r(1) = 3 for pi = 2); nothing at t = 3 was
    // written by r0/b, so the b-branch at t = 1 is ill-referenced.
    auto spec = pm_from(kDiverge);
    auto g = TapeGeometry::with_pi(0, 2);
    auto s = run_relations(spec, {}, g, 3);
    ASSERT_EQ(s.relations.size(), 4u);
    EXPECT_EQ(s.relations[3], (Relation{tri(pc(spec, "r0", "a"), pc(spec, "l0", "$"), pc(spec, "l0", "a"))}));
    auto delta = as_delta(s, 3);
    const auto b = tri({}, pc(spec, "r0", "^"), pc(spec, "r0", "b"));
    const auto a = tri({}, pc(spec, "r0", "^"), pc(spec, "r0", "a"));
    EXPECT_EQ(ill_referenced_case(delta, 1, b, 3, g), CaseId::IV);
    EXPECT_EQ(ill_referenced_case(delta, 1, a, 3, g), std::nullopt);
    // With horizon 2 the reread is out of range and nothing applies.
    EXPECT_EQ(ill_referenced_case(as_delta(s, 2), 1, b, 2, g), std::nullopt);

    auto fixed = lfp(delta, g);
    EXPECT_EQ(fixed.deltas[1], (Relation{a}));
    EXPECT_EQ(fixed.deltas[2], (Relation{tri({}, pc(spec, "r0", "a"), pc(spec, "l0", "$"))}));
}

TEST(IllReferenced, CaseThreeWhenWriterCannotReachCur) {
    auto spec = pm_from(kDiverge);
    auto g = TapeGeometry::with_pi(0, 2);
    auto delta = as_delta(run_relations(spec, {}, g, 3), 3);
    // A trichoice at t = 3 naming a writer never executed at w(3) = 1.
    const auto bogus = tri(pc(spec, "l0", "a"), pc(spec, "l0", "$"), pc(spec, "l0", "a"));
    delta.deltas[3].insert(bogus);
    EXPECT_EQ(ill_referenced_case(delta, 3, bogus, 3, g), CaseId::III);
}

TEST(Lfp, SingleComputationIsFixpoint) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    auto delta = as_delta(run_relations(spec, word(spec, "ab"), g, 16), 16);
    EXPECT_EQ(lfp(delta, g), delta);
}

TEST(Lfp, OrphanRemovedAndCascade) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    auto delta = as_delta(run_relations(spec, word(spec, "ab"), g, 6), 6);
    // An orphan at t = 5 whose predecessor was never executed at t = 4.
    const auto orphan = tri(pc(spec, "r0", "_"), pc(spec, "l0", "a"), pc(spec, "l0", "_"));
    delta.deltas[5].insert(orphan);
    auto fixed = lfp(delta, g);
    EXPECT_EQ(fixed.deltas[5].count(orphan), 0u);
    EXPECT_EQ(fixed.deltas[5].size(), 1u);
}

TEST(Lfp, EmptyLevelEmptiesEverything) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    auto delta = as_delta(run_relations(spec, word(spec, "ab"), g, 10), 10);
    delta.deltas[4].clear();
    auto fixed = lfp(delta, g);
    for (const auto& d : fixed.deltas) EXPECT_TRUE(d.empty());
}

TEST(Advance, FirstStepReadsInput) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    std::vector<Relation> series{bootstrap_s0(spec, g)};
    auto s1 = advance(series, spec, word(spec, "ba"), g);
    EXPECT_EQ(s1, (Relation{tri({}, pc(spec, "r0", "^"), pc(spec, "r0", "a"))}));
}

TEST(Advance, EmptyStaysEmpty) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    std::vector<Relation> series{bootstrap_s0(spec, g), {}};
    EXPECT_TRUE(advance(series, spec, word(spec, "ab"), g).empty());
}

TEST(Advance, DeterministicMachinesGiveSingletons) {
    PmCaps caps{3, 2, 1, 1, true, 90};
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto spec = gen_random_pm(seed, caps);
        Rng rng(seed);
        auto input = gen_input(rng, spec.input_alphabet(), 0, 3);
        auto g = TapeGeometry::with_pi(static_cast<Time>(input.size()), 4);
        auto s = run_relations(spec, input, g, 16);
        for (const auto& r : s.relations) ASSERT_LE(r.size(), 1u) << seed;
    }
}

TEST(RunRelations, Examples) {
    auto spec = pm_from(kFlipper);
    auto g = TapeGeometry::with_pi(2, 4);
    EXPECT_EQ(run_relations(spec, word(spec, "ab"), g, 0).relations.size(), 1u);
    EXPECT_THROW(run_relations(spec, word(spec, "ab"), g, -1), ModelError);

    auto none = pm_from("[machine]\nkind=pm\n[states_L]\nl0\n[states_R]\nr0\n[initial]\nl0\n[accepting]\n"
                        "[input_alphabet]\na\n[tape_alphabet]\na\n[delta]\nr0 a r0 a\n");
    auto s = run_relations(none, {}, TapeGeometry::with_pi(0, 1), 5);
    ASSERT_EQ(s.relations.size(), 1u);
    EXPECT_TRUE(s.relations[0].empty());
    EXPECT_TRUE(s.at(3).empty());
}

TEST(RunRelations, DeterministicMatchesOracle) {
    auto spec = pm_from(kAcceptAtLeft);
    auto g = TapeGeometry::with_pi(1, 4);
    const Word input = word(spec, "a");
    auto s = run_relations(spec, input, g, 16);
    auto r = oracle_relations(spec, input, g, 16);
    ASSERT_TRUE(r.exhausted);
    for (Time t = 0; t <= 16; ++t) EXPECT_EQ(s.at(t), r.at(t)) << t;
}

TEST(DecideAcceptance, Examples) {
    auto initial = pm_from("[machine]\nkind=pm\n[states_L]\nl0\n[states_R]\nr0\n[initial]\nl0\n[accepting]\nl0\n"
                           "[input_alphabet]\na\n[tape_alphabet]\na\n[delta]\n");
    auto g = TapeGeometry::with_pi(0, 1);
    auto res = decide_acceptance(initial, {}, g, 4);
    EXPECT_TRUE(res.accepted);
    EXPECT_EQ(res.accept_time, std::optional<Time>(-1));

    auto flip = pm_from(kFlipper);
    EXPECT_FALSE(decide_acceptance(flip, word(flip, "ab"), TapeGeometry::with_pi(2, 4), 20).accepted);

    auto acc = pm_from(kAcceptAtLeft);
    const auto g4 = TapeGeometry::with_pi(1, 4);
    const Word input = word(acc, "a");
    auto engine = decide_acceptance(acc, input, g4, 20);
    auto oracle = config_bfs_accepts(acc, input, g4, 21);
    ASSERT_TRUE(engine.accepted);
    ASSERT_TRUE(oracle.accepted);
    // Tape ^ a _ _ $: the blank at cell 3 is met at t = 5.
    EXPECT_EQ(engine.accept_time, std::optional<Time>(5));
    EXPECT_EQ(*engine.accept_time + 1, *oracle.accept_time);
    EXPECT_EQ(engine.witness, std::optional<PmChoice>(pc(acc, "l1", "_")));
}

TEST(DecideAcceptance, HaltTimeRecorded) {
    auto spec = pm_from(kDiverge);
    auto res = decide_acceptance(spec, {}, TapeGeometry::with_pi(0, 2), 40);
    EXPECT_FALSE(res.accepted);
    ASSERT_TRUE(res.halt_time.has_value());
    auto oracle = oracle_relations(spec, {}, TapeGeometry::with_pi(0, 2), 40);
    EXPECT_TRUE(oracle.at(*res.halt_time).empty());
    EXPECT_FALSE(oracle.at(*res.halt_time - 1).empty());
}

// Properties over generated trials.

class EngineProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(EngineProperties, CompletenessSizeBoundAndMonotoneEmptiness) {
    FuzzConfig config;
    config.master_seed = GetParam();
    config.max_pi = 4;
    config.max_input_length = 3;
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto trial = make_trial(config, i);
        auto s = run_relations(trial.spec, trial.input, trial.geometry, trial.horizon);
        auto r = oracle_relations(trial.spec, trial.input, trial.geometry, trial.horizon);
        const auto bound = relation_size_bound(trial.spec);
        bool empty_seen = false;
        for (Time t = 0; t <= trial.horizon; ++t) {
            const auto& st = s.at(t);
            ASSERT_LE(st.size(), bound);
            if (empty_seen) ASSERT_TRUE(st.empty());
            empty_seen = empty_seen || st.empty();
            if (t < r.exact_levels)
                for (const auto& x : r.at(t)) ASSERT_EQ(st.count(x), 1u) << "trial " << i << " t=" << t;
        }
    }
}

TEST_P(EngineProperties, LfpIdempotentOrderIndependentAndSound) {
    FuzzConfig config;
    config.master_seed = GetParam();
    config.max_pi = 4;
    config.max_input_length = 3;
    Rng rng(GetParam());
    int checked = 0;
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto trial = make_trial(config, i);
        auto s = run_relations(trial.spec, trial.input, trial.geometry, trial.horizon);
        const auto last = static_cast<Time>(s.relations.size()) - 1;
        if (last < 1 || s.relations[static_cast<std::size_t>(last)].empty()) continue;
        const Time t = rng.between(1, last);
        const auto pivots = executed_choices(s.relations[static_cast<std::size_t>(t)]);
        const auto pivot = pivots[rng.below(pivots.size())];
        const auto delta = init_pivot_delta(std::span(s.relations).first(static_cast<std::size_t>(t) + 1), pivot);
        const auto fixed = lfp(delta, trial.geometry);
        ASSERT_EQ(lfp(fixed, trial.geometry), fixed);
        for (std::uint64_t k = 0; k < 10; ++k) {
            LfpOptions opts;
            opts.shuffle_seed = rng.next();
            ASSERT_EQ(lfp(delta, trial.geometry, opts), fixed);
        }
        auto composed = enumerate_composed(trial.spec, trial.input, trial.geometry, delta, {100'000});
        if (!composed.exhausted) continue;
        for (const auto& comp : composed.computations) {
            auto tris = trichoices_of(comp, trial.spec, trial.input, trial.geometry);
            for (std::size_t j = 0; j < tris.size(); ++j) ASSERT_EQ(fixed.deltas[j].count(tris[j]), 1u);
        }
        ++checked;
    }
    EXPECT_GT(checked, 5);
}

INSTANTIATE_TEST_SUITE_P(Seeds, EngineProperties, ::testing::Values(1, 2, 3));
