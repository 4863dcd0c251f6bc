#include "pmlab/generators.hpp"

#include <algorithm>
#include <string>

namespace pmlab {

namespace {

const char* const kInputNames[] = {"a", "b", "c", "d", "e", "f"};
const char* const kWorkNames[] = {"x", "y", "z", "u", "v", "w"};

template <class T>
std::vector<T> sample(Rng& rng, std::vector<T> pool, std::size_t count) {
    count = std::min(count, pool.size());
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

unsigned branching(Rng& rng, unsigned max_branching, bool deterministic, bool at_least_one) {
    unsigned b = static_cast<unsigned>(rng.below(max_branching + 1ULL));
    if (deterministic) b = std::min(b, 1U);
    if (at_least_one) b = std::max(b, 1U);
    return b;
}

std::vector<StateId> pick_accepting(Rng& rng, std::size_t num_states, unsigned accept_percent) {
    if (!rng.chance(accept_percent, 100) || num_states < 2) return {};
    // Never the initial state, which would accept before any move.
    std::vector<StateId> out{static_cast<StateId>(rng.between(1, static_cast<std::int64_t>(num_states) - 1))};
    return out;
}

void add_alphabet(NameTable& symbols, std::vector<SymbolId>& input, unsigned n_input, unsigned n_work) {
    for (unsigned i = 0; i < n_input; ++i) input.push_back(symbols.intern(kInputNames[i]));
    for (unsigned i = 0; i < n_work; ++i) symbols.intern(kWorkNames[i]);
}

}  // namespace

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const auto v = next();
        if (v < limit) return v % bound;
    }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
    Rng mix(master_seed ^ (index * 0xd1b54a32d192ed03ULL));
    mix.next();
    return mix.next();
}

PmSpec gen_random_pm(std::uint64_t seed, const PmCaps& caps) {
    if (caps.states_per_side == 0 || caps.input_symbols == 0 || caps.input_symbols > 6 || caps.work_symbols > 6)
        throw ModelError("gen_random_pm: caps out of range");
    Rng rng(seed);
    PmDefinition def;
    const auto n_left = static_cast<unsigned>(rng.between(1, caps.states_per_side));
    const auto n_right = static_cast<unsigned>(rng.between(1, caps.states_per_side));
    for (unsigned i = 0; i < n_left; ++i) {
        def.states.intern("l" + std::to_string(i));
        def.side.push_back(Direction::L);
    }
    for (unsigned i = 0; i < n_right; ++i) {
        def.states.intern("r" + std::to_string(i));
        def.side.push_back(Direction::R);
    }
    def.left_end = def.symbols.intern(kLeftEndToken);
    def.blank = def.symbols.intern(kBlankToken);
    def.right_end = def.symbols.intern(kRightEndToken);
    const auto n_input = static_cast<unsigned>(rng.between(1, caps.input_symbols));
    const auto n_work = static_cast<unsigned>(rng.between(0, caps.work_symbols));
    add_alphabet(def.symbols, def.input_alphabet, n_input, n_work);
    def.initial = 0;
    def.accepting = pick_accepting(rng, def.states.size(), caps.accept_percent);

    std::vector<SymbolId> interior;
    for (SymbolId x = 0; x < def.symbols.size(); ++x)
        if (x != def.left_end && x != def.right_end) interior.push_back(x);

    const auto num_states = static_cast<StateId>(def.states.size());
    for (StateId p = 0; p < num_states; ++p) {
        if (std::find(def.accepting.begin(), def.accepting.end(), p) != def.accepting.end()) continue;
        const Direction d = def.side[p];
        // Conditions the sweep can reach from p.
        std::vector<SymbolId> reads = interior;
        reads.insert(reads.begin(), d == Direction::L ? def.left_end : def.right_end);
        for (SymbolId x : reads) {
            std::vector<PmChoice> pool;
            if (x == def.left_end || x == def.right_end) {
                const Direction target = reverse(d);
                for (StateId q = 0; q < num_states; ++q)
                    if (def.side[q] == target) pool.push_back({q, x});
            } else {
                for (StateId q = 0; q < num_states; ++q)
                    if (def.side[q] == d)
                        for (SymbolId y : interior) pool.push_back({q, y});
            }
            const bool first = p == def.initial && x == def.left_end;
            const auto b = branching(rng, caps.max_branching, caps.deterministic, first);
            for (const auto& c : sample(rng, pool, b)) def.moves.push_back({p, x, c.state, c.symbol});
        }
    }
    return PmSpec(std::move(def));
}

NtmSpec gen_random_ntm(std::uint64_t seed, const NtmCaps& caps) {
    if (caps.states == 0 || caps.input_symbols == 0 || caps.input_symbols > 6 || caps.work_symbols > 6)
        throw ModelError("gen_random_ntm: caps out of range");
    Rng rng(seed);
    NtmDefinition def;
    const auto n_states = static_cast<unsigned>(rng.between(1, caps.states));
    for (unsigned i = 0; i < n_states; ++i) def.states.intern("q" + std::to_string(i));
    def.left_end = def.symbols.intern(kLeftEndToken);
    def.blank = def.symbols.intern(kBlankToken);
    const auto n_input = static_cast<unsigned>(rng.between(1, caps.input_symbols));
    const auto n_work = static_cast<unsigned>(rng.between(0, caps.work_symbols));
    add_alphabet(def.symbols, def.input_alphabet, n_input, n_work);
    def.initial = 0;
    def.accepting = pick_accepting(rng, def.states.size(), caps.accept_percent);

    const auto num_states = static_cast<StateId>(def.states.size());
    const auto num_symbols = static_cast<SymbolId>(def.symbols.size());
    for (StateId p = 0; p < num_states; ++p) {
        if (std::find(def.accepting.begin(), def.accepting.end(), p) != def.accepting.end()) continue;
        for (SymbolId x = 0; x < num_symbols; ++x) {
            std::vector<NtmChoice> pool;
            for (StateId q = 0; q < num_states; ++q) {
                if (x == def.left_end) {
                    pool.push_back({q, def.left_end, Direction::R});
                    continue;
                }
                for (SymbolId y = 0; y < num_symbols; ++y)
                    if (y != def.left_end)
                        for (Direction d : {Direction::L, Direction::R}) pool.push_back({q, y, d});
            }
            const bool first = p == def.initial && x == def.left_end;
            const auto b = branching(rng, caps.max_branching, caps.deterministic, first);
            for (const auto& c : sample(rng, pool, b)) def.moves.push_back({p, x, c.state, c.symbol, c.dir});
        }
    }
    return NtmSpec(std::move(def));
}

Word gen_input(Rng& rng, const std::vector<SymbolId>& alphabet, Time min_len, Time max_len) {
    Word out;
    if (alphabet.empty()) return out;
    const auto len = rng.between(min_len, max_len);
    for (Time i = 0; i < len; ++i) out.push_back(alphabet[rng.below(alphabet.size())]);
    return out;
}

}  // namespace pmlab
