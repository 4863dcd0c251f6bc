#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <optional>

#include "pmlab/cook.hpp"
#include "pmlab/diff.hpp"
#include "pmlab/fuzz.hpp"
#include "pmlab/machine_io.hpp"
#include "pmlab/oracle.hpp"
#include "pmlab/reduction.hpp"
#include "pmlab/trichoice.hpp"

namespace pmlab::cli {

namespace {

// Raised for bad invocations that CLI11 cannot detect itself.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ParsedMachine load(const std::string& path, std::ostream& err) {
    auto parsed = load_machine_file(path);
    if (!parsed.diagnostics.empty()) {
        for (const auto& d : parsed.diagnostics) err << path << ": " << to_string(d) << "\n";
        throw UsageError("machine does not validate");
    }
    return parsed;
}

PmSpec load_pm(const std::string& path, std::ostream& err) {
    auto parsed = load(path, err);
    if (auto* pm = std::get_if<PmSpec>(&parsed.machine)) return std::move(*pm);
    throw UsageError(path + " is not a periodic machine (kind=pm)");
}

TapeGeometry geometry_for(Time n, std::optional<Time> pi, unsigned k_prime) {
    auto g = pi ? TapeGeometry::with_pi(n, *pi) : TapeGeometry::select(n, k_prime);
    g.k_prime = k_prime;
    return g;
}

Time next_pow2(Time v) {
    Time p = 1;
    while (p < v) p *= 2;
    return p;
}

std::string time_or_dash(const std::optional<Time>& t) { return t ? std::to_string(*t) : "-"; }

struct PmInputOptions {
    std::string machine;
    std::string input;
    std::optional<Time> pi;
    unsigned k_prime = 2;

    void add(CLI::App* sub, bool machine_required = true) {
        auto* m = sub->add_option("--machine", machine, "periodic machine file");
        if (machine_required) m->required();
        sub->add_option("--input", input, "input word (symbols, or a comma separated list)");
        sub->add_option("--pi", pi, "workspace (power of two, >= n + 1); default: smallest admissible");
        sub->add_option("--k-prime", k_prime, "workspace exponent used when --pi is absent")->check(CLI::Range(1U, 64U));
    }
};

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    ParsedMachine parsed = load_machine_file(path);
    for (const auto& d : parsed.diagnostics) err << path << ": " << to_string(d) << "\n";
    if (!parsed.diagnostics.empty()) return kUsage;
    std::visit(
        [&](const auto& spec) {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, PmSpec>) {
                for (const auto& d : lint_pm(spec)) out << "warning: " << to_string(d) << "\n";
                out << "ok kind=pm";
            } else {
                out << "ok kind=ntm";
            }
            out << " states=" << spec.num_states() << " symbols=" << spec.num_symbols()
                << " moves=" << spec.moves().size() << "\n";
        },
        parsed.machine);
    return kOk;
}

int cmd_run(const PmInputOptions& o, Time bound, const std::string& engine, unsigned k, std::ostream& out,
            std::ostream& err) {
    auto parsed = load(o.machine, err);
    if (auto* ntm = std::get_if<NtmSpec>(&parsed.machine)) {
        const Word input = parse_input(o.input, ntm->symbols());
        const auto n = static_cast<Time>(input.size());
        if (engine == "oracle") {
            const auto res = config_bfs_accepts(*ntm, input, bound);
            out << "engine=oracle kind=ntm verdict=" << (res.accepted ? "accept" : "reject")
                << " accept_time=" << time_or_dash(res.accept_time) << " bound=" << bound << "\n";
            return kOk;
        }
        // The trichoice engine runs the compiled machine: an NTM run of B
        // moves becomes at most (4B - 1) B periodic moves on a workspace of
        // at least B cells.
        const auto red = compile_ntm_to_pm(*ntm, k);
        const Time b = std::max<Time>(bound, 1);
        const auto g = TapeGeometry::with_pi(n, next_pow2(std::max(b, n + 1)));
        const Time horizon = (4 * b - 1) * b - 1;
        const auto res = decide_acceptance(red.pm, red.pm_input(input), g, horizon);
        out << "engine=trichoice kind=ntm verdict=" << (res.accepted ? "accept" : "reject")
            << " accept_time=" << time_or_dash(res.accept_time) << " pi=" << g.pi << " horizon=" << horizon << "\n";
        return kOk;
    }
    const auto& pm = std::get<PmSpec>(parsed.machine);
    const Word input = parse_input(o.input, pm.symbols());
    const auto g = geometry_for(static_cast<Time>(input.size()), o.pi, o.k_prime);
    if (engine == "oracle") {
        const auto res = config_bfs_accepts(pm, input, g, bound + 1);
        std::optional<Time> t;
        if (res.accept_time) t = *res.accept_time - 1;
        out << "engine=oracle kind=pm verdict=" << (res.accepted ? "accept" : "reject")
            << " accept_time=" << time_or_dash(t) << " pi=" << g.pi << " horizon=" << bound << "\n";
        return kOk;
    }
    const auto res = decide_acceptance(pm, input, g, bound);
    out << "engine=trichoice kind=pm verdict=" << (res.accepted ? "accept" : "reject")
        << " accept_time=" << time_or_dash(res.accept_time) << " pi=" << g.pi << " horizon=" << bound;
    if (res.witness) out << " witness=" << format_choice(pm, *res.witness);
    if (res.halt_time) out << " halt_time=" << *res.halt_time;
    out << "\n";
    return kOk;
}

int cmd_reduce(const std::string& machine, unsigned k, const std::string& output, std::ostream& out,
               std::ostream& err) {
    auto parsed = load(machine, err);
    auto* ntm = std::get_if<NtmSpec>(&parsed.machine);
    if (!ntm) throw UsageError(machine + " is not an ntm (kind=ntm)");
    const auto red = compile_ntm_to_pm(*ntm, k);
    write_text_file(output, serialize_machine(red.pm));
    std::size_t left = 0;
    for (StateId q = 0; q < red.pm.num_states(); ++q) left += red.pm.side(q) == Direction::L;
    out << "wrote " << output << " states_L=" << left << " states_R=" << red.pm.num_states() - left
        << " symbols=" << red.pm.num_symbols() << " moves=" << red.pm.moves().size() << " k=" << k << "\n";
    return kOk;
}

int cmd_relations(const PmInputOptions& o, Time t, bool use_oracle, std::ostream& out, std::ostream& err) {
    const PmSpec pm = load_pm(o.machine, err);
    const Word input = parse_input(o.input, pm.symbols());
    const auto g = geometry_for(static_cast<Time>(input.size()), o.pi, o.k_prime);
    if (use_oracle) {
        const auto r = oracle_relations(pm, input, g, t);
        out << format_relations(pm, r.relations);
        if (!r.exhausted) {
            err << "oracle budget exhausted; relations exact only for t < " << r.exact_levels << "\n";
            return kFinding;
        }
        return kOk;
    }
    const auto s = run_relations(pm, input, g, t);
    out << format_relations(pm, s.relations);
    return kOk;
}

int cmd_diff(const PmInputOptions& o, std::optional<Time> tmax, const std::string& bundle, std::ostream& out,
             std::ostream& err) {
    std::optional<PmSpec> pm;
    Word input;
    TapeGeometry g;
    Time horizon = 0;
    std::optional<Verdict> recorded;
    if (!bundle.empty()) {
        const std::filesystem::path p(bundle);
        auto b = load_bundle(p.parent_path().empty() ? "." : p.parent_path(), p.filename().string());
        pm.emplace(std::move(b.spec));
        input = std::move(b.input);
        g = b.geometry;
        horizon = tmax.value_or(b.horizon);
        recorded = b.recorded;
    } else {
        if (o.machine.empty()) throw UsageError("diff needs --machine or --bundle");
        pm.emplace(load_pm(o.machine, err));
        input = parse_input(o.input, pm->symbols());
        g = geometry_for(static_cast<Time>(input.size()), o.pi, o.k_prime);
        horizon = tmax.value_or(4 * g.pi);
    }
    const auto rep = diff_run(*pm, input, g, horizon);
    out << format_report(*pm, rep);
    if (recorded) out << "recorded_verdict=" << to_string(*recorded) << "\n";
    return rep.verdict() == Verdict::Equal ? kOk : kFinding;
}

int cmd_headmath(Time pi, Time tmax, std::ostream& out) {
    if (!is_power_of_two(pi)) throw UsageError("--pi must be a power of two");
    out << "t h w r\n";
    for (Time t = 0; t <= tmax; ++t)
        out << t << ' ' << head_position(t, pi) << ' ' << time_or_dash(last_write_time(t, pi)) << ' '
            << next_read_time(t, pi) << "\n";
    return kOk;
}

int cmd_cook(std::uint64_t k, std::uint64_t c, const std::string& exceptions_file, std::ostream& out) {
    Exceptions ex;
    if (!exceptions_file.empty()) ex = parse_exceptions(read_text_file(exceptions_file));
    const auto r = cook_exponent(k, c, ex);
    out << "k=" << k << " c=" << c << " b=" << r.b << " d=" << r.d << " k_prime=" << r.k_prime << "\n";
    return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periodic machine lab: machine files, reduction, trichoice engine and differential oracle", "pmlab"};
    app.require_subcommand(1);

    std::string validate_file;
    auto* validate = app.add_subcommand("validate", "parse and validate a machine file");
    validate->add_option("file", validate_file)->required();

    PmInputOptions run_opts;
    Time run_bound = 0;
    std::string engine = "trichoice";
    unsigned run_k = 1;
    auto* run = app.add_subcommand("run", "decide acceptance within a time bound");
    run_opts.add(run);
    run->add_option("--bound", run_bound, "last time step examined")->required()->check(CLI::NonNegativeNumber);
    run->add_option("--engine", engine)->check(CLI::IsMember({"trichoice", "oracle"}));
    run->add_option("--k", run_k, "time exponent when compiling an ntm for the trichoice engine");

    std::string reduce_machine, reduce_out;
    unsigned reduce_k = 1;
    auto* reduce = app.add_subcommand("reduce", "compile an ntm into a periodic machine");
    reduce->add_option("--machine", reduce_machine)->required();
    reduce->add_option("--k", reduce_k)->required();
    reduce->add_option("-o,--output", reduce_out)->required();

    PmInputOptions rel_opts;
    Time rel_t = 0;
    bool rel_oracle = false;
    auto* relations = app.add_subcommand("relations", "dump S_0..S_t (or the oracle's R_0..R_t)");
    rel_opts.add(relations);
    relations->add_option("--t", rel_t)->required()->check(CLI::NonNegativeNumber);
    relations->add_flag("--oracle", rel_oracle);

    PmInputOptions diff_opts;
    std::optional<Time> diff_tmax;
    std::string diff_bundle;
    auto* diff = app.add_subcommand("diff", "compare engine and oracle relations");
    diff_opts.add(diff, false);
    diff->add_option("--tmax", diff_tmax, "horizon (default 4 pi)")->check(CLI::NonNegativeNumber);
    diff->add_option("--bundle", diff_bundle, "re-run a persisted finding: <dir>/<hash>");

    FuzzConfig fc;
    std::string fuzz_out;
    bool no_shrink = false;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded differential campaign");
    fuzz_cmd->add_option("--seed", fc.master_seed)->required();
    fuzz_cmd->add_option("--trials", fc.trials)->required();
    fuzz_cmd->add_option("--out", fuzz_out)->required();
    fuzz_cmd->add_option("--states-per-side", fc.caps.states_per_side)->check(CLI::Range(1U, 16U));
    fuzz_cmd->add_option("--input-symbols", fc.caps.input_symbols)->check(CLI::Range(1U, 6U));
    fuzz_cmd->add_option("--work-symbols", fc.caps.work_symbols)->check(CLI::Range(0U, 6U));
    fuzz_cmd->add_option("--max-branching", fc.caps.max_branching)->check(CLI::Range(0U, 8U));
    fuzz_cmd->add_flag("--deterministic", fc.caps.deterministic);
    fuzz_cmd->add_option("--max-pi", fc.max_pi)->check(CLI::Range(Time{1}, Time{1} << 20));
    fuzz_cmd->add_option("--max-input-length", fc.max_input_length)->check(CLI::Range(Time{0}, Time{64}));
    fuzz_cmd->add_option("--horizon-multiplier", fc.horizon_multiplier)->check(CLI::Range(Time{0}, Time{64}));
    fuzz_cmd->add_option("--max-nodes", fc.diff.budget.max_nodes);
    fuzz_cmd->add_option("--jobs", fc.jobs)->check(CLI::Range(1U, 256U));
    fuzz_cmd->add_flag("--no-shrink", no_shrink);

    Time hm_pi = 0, hm_tmax = 0;
    auto* headmath = app.add_subcommand("headmath", "tabulate h, w, r");
    headmath->add_option("--pi", hm_pi)->required();
    headmath->add_option("--tmax", hm_tmax)->required()->check(CLI::NonNegativeNumber);

    std::uint64_t cook_k = 0, cook_c = 1;
    std::string cook_ex;
    auto* cook = app.add_subcommand("cook", "polynomial bound exponent k'");
    cook->add_option("--k", cook_k)->required();
    cook->add_option("--c", cook_c)->required()->check(CLI::PositiveNumber);
    cook->add_option("--exceptions", cook_ex, "file of `n value` lines");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(validate_file, out, err);
        if (*run) return cmd_run(run_opts, run_bound, engine, run_k, out, err);
        if (*reduce) return cmd_reduce(reduce_machine, reduce_k, reduce_out, out, err);
        if (*relations) return cmd_relations(rel_opts, rel_t, rel_oracle, out, err);
        if (*diff) return cmd_diff(diff_opts, diff_tmax, diff_bundle, out, err);
        if (*fuzz_cmd) {
            fc.output_dir = fuzz_out;
            fc.shrink = !no_shrink;
            const auto summary = fuzz(fc);
            out << format_summary(summary, fc);
            return summary.completeness_violations > 0 ? kFinding : kOk;
        }
        if (*headmath) return cmd_headmath(hm_pi, hm_tmax, out);
        if (*cook) return cmd_cook(cook_k, cook_c, cook_ex, out);
    } catch (const ParseError& e) {
        for (const auto& m : e.messages()) err << "error: " << m << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kFinding;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace pmlab::cli
