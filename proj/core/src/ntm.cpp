#include "pmlab/ntm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace pmlab {

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

using NamedMove = std::tuple<std::string, std::string, std::string, std::string, int>;

struct NamedNtm {
    std::set<std::string> states, symbols, input, accepting;
    std::string left_end, blank, initial;
    std::set<NamedMove> moves;
    bool operator==(const NamedNtm&) const = default;
};

NamedNtm by_name(const NtmSpec& s) {
    NamedNtm n;
    const auto& st = s.states();
    const auto& sy = s.symbols();
    n.states.insert(st.names().begin(), st.names().end());
    n.symbols.insert(sy.names().begin(), sy.names().end());
    for (auto x : s.input_alphabet()) n.input.insert(sy.name(x));
    for (auto q : s.accepting()) n.accepting.insert(st.name(q));
    n.left_end = sy.name(s.left_end());
    n.blank = sy.name(s.blank());
    n.initial = st.name(s.initial());
    for (const auto& m : s.moves())
        n.moves.emplace(st.name(m.from), sy.name(m.read), st.name(m.to), sy.name(m.write), offset(m.dir));
    return n;
}

std::optional<CompleteConfiguration> apply_choice(const CompleteConfiguration& c, const NtmChoice& ch,
                                                  SymbolId blank) {
    CompleteConfiguration next;
    next.state = ch.state;
    auto rest_begin = c.right.empty() ? c.right.end() : c.right.begin() + 1;
    if (ch.dir == Direction::L) {
        if (c.left.empty()) return std::nullopt;
        next.left.assign(c.left.begin(), c.left.end() - 1);
        next.right.reserve(c.right.size() + 1);
        next.right.push_back(c.left.back());
        next.right.push_back(ch.symbol);
        next.right.insert(next.right.end(), rest_begin, c.right.end());
    } else {
        next.left = c.left;
        next.left.push_back(ch.symbol);
        next.right.assign(rest_begin, c.right.end());
    }
    return next.canonical(blank);
}

SymbolId scanned(const CompleteConfiguration& c, SymbolId blank) {
    return c.right.empty() ? blank : c.right.front();
}

}  // namespace

NtmSpec::NtmSpec(NtmDefinition def) : def_(std::move(def)) {
    const auto nq = def_.states.size();
    const auto ny = def_.symbols.size();
    if (nq == 0) throw ModelError("machine has no states");
    auto check_state = [&](StateId s, const char* what) {
        if (s >= nq) throw ModelError(std::string(what) + ": state id out of range");
    };
    auto check_symbol = [&](SymbolId x, const char* what) {
        if (x >= ny) throw ModelError(std::string(what) + ": symbol id out of range");
    };
    check_state(def_.initial, "initial");
    check_symbol(def_.left_end, "left endmarker");
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
    for (const auto& m : def_.moves) table_[m.from * ny + m.read].push_back({m.to, m.write, m.dir});
    accepting_mask_.assign(nq, 0);
    for (auto q : def_.accepting) accepting_mask_[q] = 1;
    input_mask_.assign(ny, 0);
    for (auto x : def_.input_alphabet) input_mask_[x] = 1;
}

std::span<const NtmChoice> NtmSpec::next_choices(StateId p, SymbolId x) const {
    return table_.at(p * num_symbols() + x);
}

bool NtmSpec::operator==(const NtmSpec& other) const { return by_name(*this) == by_name(other); }

CompleteConfiguration CompleteConfiguration::canonical(SymbolId blank) const {
    CompleteConfiguration c = *this;
    while (!c.right.empty() && c.right.back() == blank) c.right.pop_back();
    return c;
}

bool equivalent(const CompleteConfiguration& a, const CompleteConfiguration& b, SymbolId blank) {
    return a.canonical(blank) == b.canonical(blank);
}

std::vector<Diagnostic> validate_ntm(const NtmSpec& spec) {
    std::vector<Diagnostic> out;
    const auto& sy = spec.symbols();
    const auto& st = spec.states();
    if (spec.left_end() == spec.blank())
        out.push_back({"left-endmarker equals blank", sy.name(spec.blank())});
    if (spec.is_input_symbol(spec.blank())) out.push_back({"blank in input alphabet", sy.name(spec.blank())});
    if (spec.is_input_symbol(spec.left_end()))
        out.push_back({"left-endmarker in input alphabet", sy.name(spec.left_end())});

    for (const auto& m : spec.moves()) {
        std::string where = st.name(m.from) + " " + sy.name(m.read) + " -> " + st.name(m.to) + " " +
                            sy.name(m.write) + " " + to_char(m.dir);
        if (spec.is_accepting(m.from)) out.push_back({"move from accepting state", where});
        if (m.read == spec.left_end()) {
            if (m.write != spec.left_end() || m.dir != Direction::R)
                out.push_back({"left-endmarker constraint", where});
        } else if (m.write == spec.left_end()) {
            out.push_back({"left-endmarker written mid-tape", where});
        }
    }
    return out;
}

CompleteConfiguration initial_configuration(const Word& input, const NtmSpec& spec) {
    CompleteConfiguration c;
    c.state = spec.initial();
    c.right.reserve(input.size() + 1);
    c.right.push_back(spec.left_end());
    c.right.insert(c.right.end(), input.begin(), input.end());
    return c.canonical(spec.blank());
}

std::vector<CompleteConfiguration> successors(const CompleteConfiguration& c, const NtmSpec& spec) {
    std::vector<CompleteConfiguration> out;
    for (const auto& ch : spec.next_choices(c.state, scanned(c, spec.blank()))) {
        if (auto next = apply_choice(c, ch, spec.blank())) out.push_back(std::move(*next));
    }
    sort_unique(out);
    return out;
}

long displacement_sum(std::span<const NtmChoice> choices, Time i, Time j) {
    if (i > j) return 0;
    const auto len = static_cast<Time>(choices.size());
    if (i < 0 || j >= len) throw std::out_of_range("displacement_sum: index out of range");
    long sum = 0;
    for (Time k = i; k <= j; ++k) sum += offset(choices[k].dir);
    return sum;
}

std::optional<Time> ntm_writer_time(std::span<const NtmChoice> choices, Time j) {
    if (j < 0 || j >= static_cast<Time>(choices.size()))
        throw std::out_of_range("ntm_writer_time: index out of range");
    // D(i, j) accumulated right to left.
    long sum = offset(choices[j].dir);
    for (Time i = j - 1; i >= 0; --i) {
        sum += offset(choices[i].dir);
        if (sum == 0) return i;
    }
    return std::nullopt;
}

bool is_valid_ntm_computation(std::span<const NtmChoice> choices, const Word& input, const NtmSpec& spec) {
    if (choices.empty()) return true;
    auto initial_symbol = [&](long cell) -> SymbolId {
        if (cell == 0) return spec.left_end();
        if (cell <= static_cast<long>(input.size())) return input[cell - 1];
        return spec.blank();
    };
    auto contains = [](std::span<const NtmChoice> set, const NtmChoice& c) {
        return std::binary_search(set.begin(), set.end(), c);
    };
    if (!contains(spec.next_choices(spec.initial(), spec.left_end()), choices[0])) return false;
    long head = 0;
    for (std::size_t j = 0; j + 1 < choices.size(); ++j) {
        head += offset(choices[j].dir);
        if (head < 0) return false;
        SymbolId read;
        if (auto w = ntm_writer_time(choices, static_cast<Time>(j)))
            read = choices[*w].symbol;
        else
            read = initial_symbol(head);
        if (!contains(spec.next_choices(choices[j].state, read), choices[j + 1])) return false;
    }
    return true;
}

std::vector<NtmChoice> normalize_run(std::span<const CompleteConfiguration> configs, const NtmSpec& spec) {
    std::vector<NtmChoice> out;
    if (configs.empty()) return out;
    const auto blank = spec.blank();
    const auto& first = configs.front();
    if (!first.left.empty() || first.state != spec.initial() || first.right.empty() ||
        first.right.front() != spec.left_end())
        throw ModelError("not a successor chain: first configuration is not initial");
    for (std::size_t i = 0; i + 1 < configs.size(); ++i) {
        const auto& cur = configs[i];
        const auto target = configs[i + 1].canonical(blank);
        std::optional<NtmChoice> found;
        for (const auto& ch : spec.next_choices(cur.state, scanned(cur, blank))) {
            auto next = apply_choice(cur, ch, blank);
            if (!next || *next != target) continue;
            if (found) throw std::logic_error("ambiguous move at step " + std::to_string(i));
            found = ch;
        }
        if (!found) throw ModelError("not a successor chain at step " + std::to_string(i));
        out.push_back(*found);
    }
    return out;
}

std::vector<CompleteConfiguration> denormalize_run(std::span<const NtmChoice> choices, const Word& input,
                                                   const NtmSpec& spec) {
    std::vector<CompleteConfiguration> out;
    out.reserve(choices.size() + 1);
    out.push_back(initial_configuration(input, spec));
    for (std::size_t i = 0; i < choices.size(); ++i) {
        const auto& cur = out.back();
        auto options = spec.next_choices(cur.state, scanned(cur, spec.blank()));
        if (!std::binary_search(options.begin(), options.end(), choices[i]))
            throw ModelError("not a valid computation at step " + std::to_string(i));
        auto next = apply_choice(cur, choices[i], spec.blank());
        if (!next) throw ModelError("head falls off the left end at step " + std::to_string(i));
        out.push_back(std::move(*next));
    }
    return out;
}

}  // namespace pmlab
