#include "pmlab/machine_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace pmlab {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

const char* const kSections[] = {"machine",     "states",         "states_L",      "states_R", "initial",
                                 "accepting",   "input_alphabet", "tape_alphabet", "delta"};

bool valid_token(std::string_view tok) {
    if (tok.empty()) return false;
    return std::all_of(tok.begin(), tok.end(), [](char ch) {
        const auto c = static_cast<unsigned char>(ch);
        return std::isalnum(c) || ch == '.' || ch == '[' || ch == ']' || ch == ',' || ch == '/' || ch == '^' ||
               ch == '$' || ch == '_';
    });
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

std::string at_line(int n, const std::string& msg) { return "line " + std::to_string(n) + ": " + msg; }

// Resolves names against a table, recording an error on failure.
template <class Id>
bool resolve(const NameTable& table, const std::string& name, int line, const char* what,
             std::vector<std::string>& errors, Id& out) {
    auto id = table.find(name);
    if (!id) {
        errors.push_back(at_line(line, std::string("unknown ") + what + " '" + name + "'"));
        return false;
    }
    out = *id;
    return true;
}

// Symbol rank after parsing: reserved tokens first, then id order.
std::vector<std::uint32_t> symbol_ranks(const NameTable& symbols, const std::vector<SymbolId>& reserved) {
    std::vector<std::uint32_t> rank(symbols.size());
    std::uint32_t next = 0;
    for (auto r : reserved) rank[r] = next++;
    for (SymbolId x = 0; x < symbols.size(); ++x)
        if (std::find(reserved.begin(), reserved.end(), x) == reserved.end()) rank[x] = next++;
    return rank;
}

std::vector<SymbolId> by_rank(const std::vector<std::uint32_t>& rank) {
    std::vector<SymbolId> order(rank.size());
    for (SymbolId x = 0; x < rank.size(); ++x) order[rank[x]] = x;
    return order;
}

std::string symbol_token(SymbolId x, const NameTable& symbols, SymbolId le, SymbolId blank,
                         std::optional<SymbolId> re) {
    if (x == le) return std::string(kLeftEndToken);
    if (x == blank) return std::string(kBlankToken);
    if (re && x == *re) return std::string(kRightEndToken);
    return symbols.name(x);
}

}  // namespace

ParseError::ParseError(std::vector<std::string> messages)
    : std::runtime_error(messages.empty() ? "parse error" : join(messages, "; ")), messages_(std::move(messages)) {}

ParsedMachine parse_machine(std::string_view text) {
    std::vector<std::string> errors;
    std::map<std::string, std::vector<Line>> sections;
    std::string kind;
    std::string current;
    int number = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            const auto name = line.substr(1, line.size() - 2);
            if (std::find(std::begin(kSections), std::end(kSections), name) != std::end(kSections)) {
                current = name;
                continue;
            }
        }
        if (current.empty()) {
            errors.push_back(at_line(number, "content outside of a section"));
            continue;
        }
        if (current == "machine") {
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back(at_line(number, "expected key=value"));
                continue;
            }
            auto key = trim(line.substr(0, eq));
            auto value = trim(line.substr(eq + 1));
            if (key != "kind") {
                errors.push_back(at_line(number, "unknown key '" + key + "'"));
            } else if (value != "ntm" && value != "pm") {
                errors.push_back(at_line(number, "kind must be ntm or pm"));
            } else {
                kind = value;
            }
            continue;
        }
        Line entry{number, split_ws(line)};
        for (const auto& tok : entry.tokens)
            if (!valid_token(tok)) errors.push_back(at_line(number, "invalid token '" + tok + "'"));
        sections[current].push_back(std::move(entry));
    }
    if (kind.empty()) errors.push_back("missing [machine] kind=ntm|pm");
    if (!errors.empty()) throw ParseError(errors);

    const bool pm = kind == "pm";
    auto tokens_of = [&](const std::string& sec) {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& l : sections[sec])
            for (const auto& t : l.tokens) out.emplace_back(l.number, t);
        return out;
    };

    // States.
    NameTable states;
    std::vector<Direction> side;
    auto add_states = [&](const std::string& sec, Direction d) {
        for (const auto& [line, name] : tokens_of(sec)) {
            if (states.find(name)) {
                errors.push_back(at_line(line, "duplicate state '" + name + "'"));
                continue;
            }
            states.intern(name);
            side.push_back(d);
        }
    };
    if (pm) {
        if (sections.count("states")) errors.push_back("[states] is for ntm files; use [states_L]/[states_R]");
        add_states("states_L", Direction::L);
        add_states("states_R", Direction::R);
    } else {
        if (sections.count("states_L") || sections.count("states_R"))
            errors.push_back("[states_L]/[states_R] are for pm files; use [states]");
        add_states("states", Direction::L);
    }
    if (states.size() == 0) errors.push_back("no states declared");

    // Symbols: reserved first, then the declared tape alphabet.
    NameTable symbols;
    const SymbolId le = symbols.intern(kLeftEndToken);
    const SymbolId blank = symbols.intern(kBlankToken);
    const SymbolId re = pm ? symbols.intern(kRightEndToken) : SymbolId{0};
    for (const auto& [line, name] : tokens_of("tape_alphabet")) {
        const bool reserved = name == kLeftEndToken || name == kBlankToken || (pm && name == kRightEndToken);
        if (reserved) continue;
        if (!pm && name == kRightEndToken) {
            errors.push_back(at_line(line, "right endmarker is not part of an ntm alphabet"));
            continue;
        }
        if (symbols.find(name)) {
            errors.push_back(at_line(line, "duplicate symbol '" + name + "'"));
            continue;
        }
        symbols.intern(name);
    }
    std::vector<SymbolId> input;
    for (const auto& [line, name] : tokens_of("input_alphabet")) {
        SymbolId x;
        if (resolve(symbols, name, line, "symbol", errors, x)) input.push_back(x);
    }

    StateId initial = 0;
    auto init_tokens = tokens_of("initial");
    if (init_tokens.size() != 1)
        errors.push_back("[initial] must name exactly one state");
    else
        resolve(states, init_tokens.front().second, init_tokens.front().first, "state", errors, initial);

    std::vector<StateId> accepting;
    for (const auto& [line, name] : tokens_of("accepting")) {
        StateId q;
        if (resolve(states, name, line, "state", errors, q)) accepting.push_back(q);
    }

    std::vector<PmMove> pm_moves;
    std::vector<NtmMove> ntm_moves;
    for (const auto& l : sections["delta"]) {
        const std::size_t want = pm ? 4 : 5;
        if (l.tokens.size() != want) {
            errors.push_back(at_line(l.number, "delta line needs " + std::to_string(want) + " tokens"));
            continue;
        }
        StateId p, q;
        SymbolId x, y;
        bool ok = resolve(states, l.tokens[0], l.number, "state", errors, p);
        ok &= resolve(symbols, l.tokens[1], l.number, "symbol", errors, x);
        ok &= resolve(states, l.tokens[2], l.number, "state", errors, q);
        ok &= resolve(symbols, l.tokens[3], l.number, "symbol", errors, y);
        if (pm) {
            if (ok) pm_moves.push_back({p, x, q, y});
        } else {
            const auto& d = l.tokens[4];
            if (d != "L" && d != "R") {
                errors.push_back(at_line(l.number, "displacement must be L or R"));
                continue;
            }
            if (ok) ntm_moves.push_back({p, x, q, y, d == "L" ? Direction::L : Direction::R});
        }
    }
    if (!errors.empty()) throw ParseError(errors);

    if (pm) {
        PmDefinition def{std::move(states), std::move(side), std::move(symbols), std::move(input), le, blank, re,
                         initial, std::move(accepting), std::move(pm_moves)};
        PmSpec spec(std::move(def));
        auto diags = validate_pm(spec);
        return {std::move(spec), std::move(diags)};
    }
    NtmDefinition def{std::move(states), std::move(symbols), std::move(input), le, blank, initial,
                      std::move(accepting), std::move(ntm_moves)};
    NtmSpec spec(std::move(def));
    auto diags = validate_ntm(spec);
    return {std::move(spec), std::move(diags)};
}

std::string serialize_machine(const NtmSpec& spec) {
    const auto& st = spec.states();
    const auto& sy = spec.symbols();
    const auto rank = symbol_ranks(sy, {spec.left_end(), spec.blank()});
    auto tok = [&](SymbolId x) { return symbol_token(x, sy, spec.left_end(), spec.blank(), std::nullopt); };

    std::ostringstream out;
    out << "[machine]\nkind=ntm\n[states]\n" << join(st.names()) << "\n";
    out << "[initial]\n" << st.name(spec.initial()) << "\n[accepting]\n";
    std::vector<std::string> names;
    for (auto q : spec.accepting()) names.push_back(st.name(q));
    out << join(names) << "\n[input_alphabet]\n";
    names.clear();
    auto inputs = spec.input_alphabet();
    std::sort(inputs.begin(), inputs.end(), [&](SymbolId a, SymbolId b) { return rank[a] < rank[b]; });
    for (auto x : inputs) names.push_back(tok(x));
    out << join(names) << "\n[tape_alphabet]\n";
    names.clear();
    for (auto x : by_rank(rank)) names.push_back(tok(x));
    out << join(names) << "\n[delta]\n";
    auto moves = spec.moves();
    auto key = [&](const NtmMove& m) {
        return std::make_tuple(m.from, rank[m.read], m.to, rank[m.write], offset(m.dir));
    };
    std::sort(moves.begin(), moves.end(), [&](const NtmMove& a, const NtmMove& b) { return key(a) < key(b); });
    for (const auto& m : moves)
        out << st.name(m.from) << ' ' << tok(m.read) << ' ' << st.name(m.to) << ' ' << tok(m.write) << ' '
            << to_char(m.dir) << "\n";
    return out.str();
}

std::string serialize_machine(const PmSpec& spec) {
    const auto& st = spec.states();
    const auto& sy = spec.symbols();
    const auto rank = symbol_ranks(sy, {spec.left_end(), spec.blank(), spec.right_end()});
    auto tok = [&](SymbolId x) { return symbol_token(x, sy, spec.left_end(), spec.blank(), spec.right_end()); };

    std::vector<std::uint32_t> state_rank(spec.num_states());
    std::vector<std::string> left, right;
    std::uint32_t next = 0;
    for (Direction d : {Direction::L, Direction::R})
        for (StateId q = 0; q < spec.num_states(); ++q)
            if (spec.side(q) == d) {
                state_rank[q] = next++;
                (d == Direction::L ? left : right).push_back(st.name(q));
            }

    std::ostringstream out;
    out << "[machine]\nkind=pm\n[states_L]\n" << join(left) << "\n[states_R]\n" << join(right) << "\n";
    out << "[initial]\n" << st.name(spec.initial()) << "\n[accepting]\n";
    auto accepting = spec.accepting();
    std::sort(accepting.begin(), accepting.end(), [&](StateId a, StateId b) { return state_rank[a] < state_rank[b]; });
    std::vector<std::string> names;
    for (auto q : accepting) names.push_back(st.name(q));
    out << join(names) << "\n[input_alphabet]\n";
    names.clear();
    auto inputs = spec.input_alphabet();
    std::sort(inputs.begin(), inputs.end(), [&](SymbolId a, SymbolId b) { return rank[a] < rank[b]; });
    for (auto x : inputs) names.push_back(tok(x));
    out << join(names) << "\n[tape_alphabet]\n";
    names.clear();
    for (auto x : by_rank(rank)) names.push_back(tok(x));
    out << join(names) << "\n[delta]\n";
    auto moves = spec.moves();
    auto key = [&](const PmMove& m) {
        return std::make_tuple(state_rank[m.from], rank[m.read], state_rank[m.to], rank[m.write]);
    };
    std::sort(moves.begin(), moves.end(), [&](const PmMove& a, const PmMove& b) { return key(a) < key(b); });
    for (const auto& m : moves)
        out << st.name(m.from) << ' ' << tok(m.read) << ' ' << st.name(m.to) << ' ' << tok(m.write) << "\n";
    return out.str();
}

std::string serialize_machine(const AnyMachine& m) {
    return std::visit([](const auto& spec) { return serialize_machine(spec); }, m);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

ParsedMachine load_machine_file(const std::filesystem::path& path) { return parse_machine(read_text_file(path)); }

Word parse_input(std::string_view text, const NameTable& symbols) {
    std::vector<std::string> names;
    if (text.find_first_of(", \t") != std::string_view::npos) {
        std::string cur;
        for (char ch : text) {
            if (ch == ',' || ch == ' ' || ch == '\t') {
                if (!cur.empty()) names.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) names.push_back(cur);
    } else {
        for (char ch : text) names.emplace_back(1, ch);
    }
    Word out;
    for (const auto& n : names) {
        auto id = symbols.find(n);
        if (!id) throw ModelError("unknown input symbol '" + n + "'");
        out.push_back(*id);
    }
    return out;
}

std::string format_input(const Word& input, const NameTable& symbols) {
    bool single = std::all_of(input.begin(), input.end(), [&](SymbolId x) { return symbols.name(x).size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!single && i) out += ',';
        out += symbols.name(input[i]);
    }
    return out;
}

std::string format_choice(const PmSpec& spec, const PmChoice& c) {
    return spec.states().name(c.state) + "/" +
           symbol_token(c.symbol, spec.symbols(), spec.left_end(), spec.blank(), spec.right_end());
}

std::string format_trichoice(const PmSpec& spec, Time t, const Trichoice& tri) {
    auto opt = [&](const std::optional<PmChoice>& c) { return c ? format_choice(spec, *c) : std::string("-"); };
    return "t=" + std::to_string(t) + " w=" + opt(tri.writer) + " p=" + opt(tri.pred) + " c=" + format_choice(spec, tri.cur);
}

std::string format_relations(const PmSpec& spec, const std::vector<Relation>& relations) {
    std::string out;
    for (std::size_t t = 0; t < relations.size(); ++t) {
        std::vector<std::string> lines;
        for (const auto& tri : relations[t]) lines.push_back(format_trichoice(spec, static_cast<Time>(t), tri));
        std::sort(lines.begin(), lines.end());
        for (const auto& l : lines) out += l + "\n";
    }
    return out;
}

std::string stable_hash(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace pmlab
