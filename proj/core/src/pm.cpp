#include "pmlab/pm.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <tuple>

namespace pmlab {

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

using NamedMove = std::tuple<std::string, std::string, std::string, std::string>;

struct NamedPm {
    std::set<std::string> states_l, states_r, symbols, input, accepting;
    std::string left_end, right_end, blank, initial;
    std::set<NamedMove> moves;
    bool operator==(const NamedPm&) const = default;
};

NamedPm by_name(const PmSpec& s) {
    NamedPm n;
    const auto& st = s.states();
    const auto& sy = s.symbols();
    for (StateId q = 0; q < s.num_states(); ++q)
        (s.side(q) == Direction::L ? n.states_l : n.states_r).insert(st.name(q));
    n.symbols.insert(sy.names().begin(), sy.names().end());
    for (auto x : s.input_alphabet()) n.input.insert(sy.name(x));
    for (auto q : s.accepting()) n.accepting.insert(st.name(q));
    n.left_end = sy.name(s.left_end());
    n.right_end = sy.name(s.right_end());
    n.blank = sy.name(s.blank());
    n.initial = st.name(s.initial());
    for (const auto& m : s.moves()) n.moves.emplace(st.name(m.from), sy.name(m.read), st.name(m.to), sy.name(m.write));
    return n;
}

std::string describe(const PmSpec& s, const PmMove& m) {
    const auto& st = s.states();
    const auto& sy = s.symbols();
    return st.name(m.from) + " " + sy.name(m.read) + " -> " + st.name(m.to) + " " + sy.name(m.write);
}

Time saturating_pow(Time base, unsigned exp) {
    Time r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<Time>::max() / base) return std::numeric_limits<Time>::max();
        r *= base;
    }
    return r;
}

}  // namespace

PmSpec::PmSpec(PmDefinition def) : def_(std::move(def)) {
    const auto nq = def_.states.size();
    const auto ny = def_.symbols.size();
    if (nq == 0) throw ModelError("machine has no states");
    if (def_.side.size() != nq) throw ModelError("state partition does not cover every state");
    auto check_state = [&](StateId s, const char* what) {
        if (s >= nq) throw ModelError(std::string(what) + ": state id out of range");
    };
    auto check_symbol = [&](SymbolId x, const char* what) {
        if (x >= ny) throw ModelError(std::string(what) + ": symbol id out of range");
    };
    check_state(def_.initial, "initial");
    check_symbol(def_.left_end, "left endmarker");
    check_symbol(def_.right_end, "right endmarker");
    check_symbol(def_.blank, "blank");
    for (auto q : def_.accepting) check_state(q, "accepting");
    for (auto x : def_.input_alphabet) check_symbol(x, "input alphabet");
    for (const auto& m : def_.moves) {
        check_state(m.from, "move");
        check_state(m.to, "move");
        check_symbol(m.read, "move");
        check_symbol(m.write, "move");
    }
    sort_unique(def_.accepting);
    sort_unique(def_.input_alphabet);
    sort_unique(def_.moves);

    table_.assign(nq * ny, {});
    for (const auto& m : def_.moves) table_[m.from * ny + m.read].push_back({m.to, m.write});
    accepting_mask_.assign(nq, 0);
    for (auto q : def_.accepting) accepting_mask_[q] = 1;
    input_mask_.assign(ny, 0);
    for (auto x : def_.input_alphabet) input_mask_[x] = 1;
}

std::span<const PmChoice> PmSpec::next_choices(StateId p, SymbolId x) const {
    return table_.at(p * num_symbols() + x);
}

bool PmSpec::operator==(const PmSpec& other) const { return by_name(*this) == by_name(other); }

TapeGeometry TapeGeometry::with_pi(Time n, Time pi) {
    if (n < 0) throw ModelError("negative input length");
    if (!is_power_of_two(pi)) throw ModelError("workspace bound must be a power of two");
    if (n + 1 > pi) throw ModelError("workspace bound smaller than n + 1");
    return TapeGeometry{n, pi, std::nullopt};
}

TapeGeometry TapeGeometry::select(Time n, unsigned k_prime) {
    TapeGeometry g = with_pi(n, select_pi(n, k_prime));
    g.k_prime = k_prime;
    return g;
}

std::vector<Diagnostic> validate_pm(const PmSpec& spec) {
    std::vector<Diagnostic> out;
    const auto& sy = spec.symbols();
    const auto& st = spec.states();
    const auto le = spec.left_end(), re = spec.right_end(), b = spec.blank();
    if (le == re || le == b || re == b) out.push_back({"endmarkers and blank must be distinct", ""});
    for (auto x : {le, re, b})
        if (spec.is_input_symbol(x)) out.push_back({"reserved symbol in input alphabet", sy.name(x)});
    if (spec.side(spec.initial()) != Direction::L)
        out.push_back({"initial state must be in Q_L", st.name(spec.initial())});

    for (const auto& m : spec.moves()) {
        const auto from = spec.side(m.from), to = spec.side(m.to);
        const auto where = describe(spec, m);
        if (spec.is_accepting(m.from)) out.push_back({"move from accepting state", where});
        if (m.read == le) {
            if (from != Direction::L) continue;  // unreachable, see lint_pm
            if (to != Direction::R) out.push_back({"left-end must reverse to Q_R", where});
            if (m.write != le) out.push_back({"left-endmarker must be preserved", where});
        } else if (m.read == re) {
            if (from != Direction::R) continue;
            if (to != Direction::L) out.push_back({"right-end must reverse to Q_L", where});
            if (m.write != re) out.push_back({"right-endmarker must be preserved", where});
        } else {
            if (to != from) out.push_back({"mid-tape reversal", where});
            if (!spec.is_interior(m.write)) out.push_back({"endmarker written mid-tape", where});
        }
    }
    return out;
}

std::vector<Diagnostic> lint_pm(const PmSpec& spec) {
    std::vector<Diagnostic> out;
    for (const auto& m : spec.moves()) {
        const auto from = spec.side(m.from);
        if ((m.read == spec.left_end() && from == Direction::R) || (m.read == spec.right_end() && from == Direction::L))
            out.push_back({"unreachable condition", describe(spec, m)});
    }
    return out;
}

Time select_pi(Time n, unsigned k_prime) {
    if (k_prime < 1) throw ModelError("k' must be at least 1");
    if (n < 0) throw ModelError("negative input length");
    const Time pow = saturating_pow(n, k_prime);
    const Time upper = pow > std::numeric_limits<Time>::max() - k_prime ? std::numeric_limits<Time>::max()
                                                                         : pow + static_cast<Time>(k_prime);
    Time pi = 1;
    while (pi < n + 1) pi <<= 1;
    if (pi > upper) throw ModelError("no power of two in range");
    return pi;
}

Word initial_tape(const Word& input, const TapeGeometry& geometry, const PmSpec& spec) {
    if (static_cast<Time>(input.size()) != geometry.n) throw ModelError("input length does not match geometry");
    if (geometry.n + 1 > geometry.pi) throw ModelError("workspace bound smaller than n + 1");
    for (auto x : input)
        if (x >= spec.num_symbols() || !spec.is_input_symbol(x)) throw ModelError("input symbol outside Sigma");
    Word tape(static_cast<std::size_t>(geometry.pi) + 1, spec.blank());
    tape.front() = spec.left_end();
    std::copy(input.begin(), input.end(), tape.begin() + 1);
    tape.back() = spec.right_end();
    return tape;
}

std::span<const PmChoice> pm_next_choices(const PmSpec& spec, StateId p, SymbolId x) {
    if (spec.is_accepting(p)) return {};
    return spec.next_choices(p, x);
}

bool is_valid_pm_computation(std::span<const PmChoice> choices, const Word& input, const TapeGeometry& geometry,
                             const PmSpec& spec) {
    if (choices.empty()) return true;
    const Word tape = initial_tape(input, geometry, spec);
    for (std::size_t i = 0; i < choices.size(); ++i) {
        const auto t = static_cast<Time>(i);
        const StateId state = i == 0 ? spec.initial() : choices[i - 1].state;
        SymbolId read;
        if (t <= geometry.pi)
            read = tape[static_cast<std::size_t>(t)];
        else
            read = choices[static_cast<std::size_t>(*last_write_time(t, geometry.pi))].symbol;
        auto options = pm_next_choices(spec, state, read);
        if (!std::binary_search(options.begin(), options.end(), choices[i])) return false;
    }
    return true;
}

}  // namespace pmlab
