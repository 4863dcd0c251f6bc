#include "pmlab/reduction.hpp"

#include <limits>

namespace pmlab {

namespace {

// n^k + k with 0^0 = 1; saturates instead of overflowing.
Time source_time_bound(Time n, unsigned k) {
    if (n < 0) throw ModelError("negative input length");
    constexpr Time kMax = std::numeric_limits<Time>::max() / 8;
    Time p = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (n != 0 && p > kMax / n) throw ModelError("time bound overflow");
        p *= n;
    }
    return p + static_cast<Time>(k);
}

constexpr std::size_t dir_index(Direction d) { return d == Direction::L ? 0 : 1; }

}  // namespace

Time pi_policy(Time n, unsigned k) {
    if (k == 0) return 1;
    const Time bound = source_time_bound(n, k);
    Time pi = 1;
    while (pi < bound) pi <<= 1;
    return pi;
}

Time simulation_time_bound(Time n, unsigned k) {
    const Time t = source_time_bound(n, k);
    return (4 * t - 1) * t;
}

std::string normal_state_name(const std::string& state, Direction d) { return state + "." + to_char(d); }

std::string compound_symbol_name(const NtmSpec& spec, const NtmMove& m) {
    const auto& st = spec.states();
    const auto& sy = spec.symbols();
    return "[" + st.name(m.from) + "," + sy.name(m.read) + "," + st.name(m.to) + "," + sy.name(m.write) + "," +
           to_char(m.dir) + "]";
}

std::string compound_state_name(const NtmSpec& spec, Direction sweep, const NtmMove& m) {
    return std::string(1, to_char(sweep)) + compound_symbol_name(spec, m);
}

Time ReductionOutput::pi_for(Time n) const { return pi_policy(n, k); }

Time ReductionOutput::time_bound_for(Time n) const { return simulation_time_bound(n, k); }

TapeGeometry ReductionOutput::geometry_for(Time n) const {
    if (k == 0) return TapeGeometry::with_pi(0, 1);
    return TapeGeometry::with_pi(n, pi_for(n));
}

Word ReductionOutput::pm_input(const Word& ntm_input) const {
    Word out;
    if (k == 0) return out;
    out.reserve(ntm_input.size());
    for (auto x : ntm_input) out.push_back(symbol_map.at(x));
    return out;
}

ReductionOutput compile_ntm_to_pm(const NtmSpec& spec, unsigned k) {
    if (auto diags = validate_ntm(spec); !diags.empty())
        throw ModelError("invalid source machine: " + to_string(diags.front()));

    const auto nq = static_cast<StateId>(spec.num_states());
    const auto ny = static_cast<SymbolId>(spec.num_symbols());
    const auto& src_states = spec.states();
    const auto& src_symbols = spec.symbols();
    const SymbolId src_le = spec.left_end();

    PmDefinition def;
    struct {
        std::vector<SymbolId> symbol_map;
        std::vector<StateId> left_state, right_state;
    } out;

    // Symbols: left end, blank, right end, remaining source symbols, compounds.
    out.symbol_map.assign(ny, 0);
    def.left_end = def.symbols.intern(src_symbols.name(src_le));
    def.blank = def.symbols.intern(src_symbols.name(spec.blank()));
    if (def.symbols.find(kRightEndToken)) throw ModelError("invalid source machine: symbol '$' is reserved");
    def.right_end = def.symbols.intern(kRightEndToken);
    out.symbol_map[src_le] = def.left_end;
    out.symbol_map[spec.blank()] = def.blank;
    for (SymbolId x = 0; x < ny; ++x) {
        if (x == src_le || x == spec.blank()) continue;
        out.symbol_map[x] = def.symbols.intern(src_symbols.name(x));
    }

    // Enumerates every m = (p, x, q, y, d) in a fixed order.
    auto for_each_compound = [&](auto&& fn) {
        for (StateId p = 0; p < nq; ++p)
            for (SymbolId x = 0; x < ny; ++x)
                for (StateId q = 0; q < nq; ++q)
                    for (SymbolId y = 0; y < ny; ++y)
                        for (Direction d : {Direction::L, Direction::R}) fn(NtmMove{p, x, q, y, d});
    };
    auto compound_index = [&](const NtmMove& m) {
        return ((((static_cast<std::size_t>(m.from) * ny + m.read) * nq + m.to) * ny + m.write) * 2) + dir_index(m.dir);
    };
    const std::size_t num_compounds = static_cast<std::size_t>(nq) * ny * nq * ny * 2;

    std::vector<SymbolId> compound_symbol(num_compounds);
    for_each_compound([&](const NtmMove& m) {
        const auto name = compound_symbol_name(spec, m);
        if (def.symbols.find(name)) throw ModelError("invalid source machine: name collision '" + name + "'");
        compound_symbol[compound_index(m)] = def.symbols.intern(name);
    });

    // States: Q_L (normal, compound) then Q_R (normal, compound).
    std::vector<StateId> compound_state[2];
    auto add_state = [&](const std::string& name, Direction side) {
        if (def.states.find(name)) throw ModelError("invalid source machine: name collision '" + name + "'");
        def.side.push_back(side);
        return def.states.intern(name);
    };
    out.left_state.resize(nq);
    out.right_state.resize(nq);
    for (Direction side : {Direction::L, Direction::R}) {
        auto& normal = side == Direction::L ? out.left_state : out.right_state;
        for (StateId p = 0; p < nq; ++p) normal[p] = add_state(normal_state_name(src_states.name(p), side), side);
        auto& compounds = compound_state[dir_index(side)];
        compounds.resize(num_compounds);
        for_each_compound([&](const NtmMove& m) {
            compounds[compound_index(m)] = add_state(compound_state_name(spec, side, m), side);
        });
    }
    auto normal = [&](StateId p, Direction side) { return side == Direction::L ? out.left_state[p] : out.right_state[p]; };
    auto compound = [&](Direction side, const NtmMove& m) { return compound_state[dir_index(side)][compound_index(m)]; };

    def.initial = out.left_state[spec.initial()];
    for (auto f : spec.accepting()) {
        def.accepting.push_back(out.left_state[f]);
        def.accepting.push_back(out.right_state[f]);
    }
    for (auto x : spec.input_alphabet()) def.input_alphabet.push_back(out.symbol_map[x]);

    auto& moves = def.moves;
    const SymbolId le = def.left_end, re = def.right_end;

    // Normal-state rules: follow the source on the same displacement, record
    // a reversal otherwise. At the left end the source always moves right.
    for (StateId p = 0; p < nq; ++p) {
        for (const auto& c : spec.next_choices(p, src_le))
            moves.push_back({normal(p, Direction::L), le, normal(c.state, Direction::R), le});
        for (SymbolId x = 0; x < ny; ++x) {
            if (x == src_le) continue;
            for (const auto& c : spec.next_choices(p, x)) {
                const NtmMove m{p, x, c.state, c.symbol, c.dir};
                for (Direction last : {Direction::L, Direction::R}) {
                    if (c.dir == last)
                        moves.push_back({normal(p, last), out.symbol_map[x], normal(c.state, last),
                                         out.symbol_map[c.symbol]});
                    else
                        moves.push_back({normal(p, last), out.symbol_map[x], compound(last, m), compound_symbol[compound_index(m)]});
                }
            }
        }
    }

    // Compound-state rules. A reversal to d started while
    // sweeping towards -d: skip to the far end, flip, skip back, execute.
    // Compounds naming `^` as read or written symbol are unreachable from a
    // valid source and would write the left end mid-tape; they get no rules.
    for_each_compound([&](const NtmMove& m) {
        if (m.read == src_le || m.write == src_le) return;
        const Direction outbound = reverse(m.dir);
        const StateId going = compound(outbound, m);
        const StateId coming = compound(m.dir, m);
        const SymbolId end = outbound == Direction::L ? le : re;
        for (SymbolId a = 0; a < ny; ++a) {
            if (a == src_le) continue;
            const SymbolId sym = out.symbol_map[a];
            moves.push_back({going, sym, going, sym});
            moves.push_back({coming, sym, coming, sym});
        }
        moves.push_back({going, end, coming, end});
        moves.push_back({coming, compound_symbol[compound_index(m)], normal(m.to, m.dir), out.symbol_map[m.write]});
    });

    return ReductionOutput{PmSpec(std::move(def)), k, std::move(out.symbol_map), std::move(out.left_state),
                           std::move(out.right_state)};
}

}  // namespace pmlab
