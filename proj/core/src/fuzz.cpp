#include "pmlab/fuzz.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "pmlab/machine_io.hpp"

namespace pmlab {

namespace {

Time horizon_for(const FuzzConfig& config, Time pi) { return config.horizon_multiplier * pi; }

PmSpec without_move(const PmSpec& spec, std::size_t i) {
    PmDefinition def = spec.definition();
    def.moves.erase(def.moves.begin() + static_cast<std::ptrdiff_t>(i));
    return PmSpec(std::move(def));
}

TrialOutcome run_trial(const FuzzConfig& config, std::uint64_t index) {
    Trial trial = make_trial(config, index);
    TrialOutcome out;
    out.index = index;
    out.report = diff_run(trial.spec, trial.input, trial.geometry, trial.horizon, config.diff);
    out.verdict = out.report.verdict();
    if (out.verdict != Verdict::Equal) {
        Finding f{index,       out.verdict,   std::string{}, trial.spec, trial.input,
                  trial.geometry, trial.horizon, out.report,    0};
        if (config.shrink) f = shrink_finding(std::move(f), config);
        f.hash = finding_hash(f.spec, f.input, f.geometry, f.horizon);
        out.finding = std::move(f);
    }
    return out;
}

}  // namespace

std::uint64_t FuzzSummary::count(Verdict v) const {
    auto it = counts.find(v);
    return it == counts.end() ? 0 : it->second;
}

Trial make_trial(const FuzzConfig& config, std::uint64_t index) {
    const auto seed = trial_seed(config.master_seed, index);
    Rng rng(seed);
    PmSpec spec = gen_random_pm(rng.next(), config.caps);
    Word input = gen_input(rng, spec.input_alphabet(), 0, config.max_input_length);
    const auto n = static_cast<Time>(input.size());
    // Admissible workspaces: powers of two in [n + 1, min(max_pi, n^k' + k')].
    Time upper = 1;
    for (unsigned i = 0; i < config.k_prime && upper <= config.max_pi; ++i) upper *= n;
    if (config.k_prime == 0) upper = 1;
    upper = std::min(config.max_pi, upper + static_cast<Time>(config.k_prime));
    std::vector<Time> pis;
    for (Time p = 1; p <= upper; p *= 2)
        if (p >= n + 1) pis.push_back(p);
    if (pis.empty()) throw ModelError("make_trial: max_pi admits no workspace for n=" + std::to_string(n));
    const Time pi = pis[rng.below(pis.size())];
    auto geometry = TapeGeometry::with_pi(n, pi);
    geometry.k_prime = config.k_prime;
    return Trial{index, seed, std::move(spec), std::move(input), geometry, horizon_for(config, pi)};
}

Finding shrink_finding(Finding f, const FuzzConfig& config) {
    unsigned budget =
        f.verdict == Verdict::Inconclusive ? config.inconclusive_shrink_attempts : config.shrink_attempts;
    auto keeps = [&](const PmSpec& spec, const Word& input, const TapeGeometry& g, DiffReport& rep) {
        if (budget == 0) return false;
        --budget;
        const Time h = horizon_for(config, g.pi);
        rep = diff_run(spec, input, g, h, config.diff);
        return rep.verdict() == f.verdict;
    };
    bool progress = true;
    while (progress && budget > 0) {
        progress = false;
        for (std::size_t i = 0; i < f.spec.moves().size() && budget > 0;) {
            PmSpec cand = without_move(f.spec, i);
            DiffReport rep;
            if (keeps(cand, f.input, f.geometry, rep)) {
                f.spec = std::move(cand);
                f.report = std::move(rep);
                ++f.shrink_steps;
                progress = true;
            } else {
                ++i;
            }
        }
        for (std::size_t i = 0; i < f.input.size() && budget > 0;) {
            Word cand = f.input;
            cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(i));
            auto g = TapeGeometry::with_pi(static_cast<Time>(cand.size()), f.geometry.pi);
            g.k_prime = f.geometry.k_prime;
            DiffReport rep;
            if (keeps(f.spec, cand, g, rep)) {
                f.input = std::move(cand);
                f.geometry = g;
                f.report = std::move(rep);
                ++f.shrink_steps;
                progress = true;
            } else {
                ++i;
            }
        }
        while (f.geometry.pi / 2 >= f.geometry.n + 1 && budget > 0) {
            auto g = TapeGeometry::with_pi(f.geometry.n, f.geometry.pi / 2);
            g.k_prime = f.geometry.k_prime;
            DiffReport rep;
            if (!keeps(f.spec, f.input, g, rep)) break;
            f.geometry = g;
            f.report = std::move(rep);
            ++f.shrink_steps;
            progress = true;
        }
    }
    f.horizon = horizon_for(config, f.geometry.pi);
    if (f.report.horizon != f.horizon || f.report.geometry != f.geometry)
        f.report = diff_run(f.spec, f.input, f.geometry, f.horizon, config.diff);
    return f;
}

FuzzSummary fuzz(const FuzzConfig& config, const std::function<void(const TrialOutcome&)>& observer) {
    std::vector<std::optional<TrialOutcome>> outcomes(config.trials);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= config.trials) return;
            try {
                outcomes[i] = run_trial(config, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = config.trials;
                return;
            }
        }
    };
    const unsigned jobs = std::max(1U, config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    FuzzSummary summary;
    summary.trials = config.trials;
    if (!config.output_dir.empty()) std::filesystem::create_directories(config.output_dir);
    for (auto& slot : outcomes) {
        const auto& o = *slot;
        ++summary.counts[o.verdict];
        const bool exhaustive = std::none_of(o.report.rows.begin(), o.report.rows.end(), [](const DiffRow& r) {
            return r.verdict == Verdict::Inconclusive;
        });
        if (exhaustive) ++summary.exhaustive_trials;
        if (o.report.completeness_violated()) ++summary.completeness_violations;
        if (o.report.acceptance_superset()) ++summary.acceptance_supersets;
        if (o.report.max_relation_size > o.report.size_bound) ++summary.size_bound_violations;
        summary.max_relation_size = std::max(summary.max_relation_size, o.report.max_relation_size);
        if (o.finding) {
            summary.bundles.push_back(o.finding->hash);
            if (!config.output_dir.empty()) write_bundle(config.output_dir, *o.finding);
        }
        if (observer) observer(o);
    }
    if (!config.output_dir.empty())
        write_text_file(config.output_dir / "summary.txt", format_summary(summary, config));
    return summary;
}

std::string format_summary(const FuzzSummary& s, const FuzzConfig& config) {
    std::ostringstream out;
    out << "master_seed=" << config.master_seed << "\n";
    out << "trials=" << s.trials << "\n";
    out << "max_states_per_side=" << config.caps.states_per_side << "\n";
    out << "max_input_symbols=" << config.caps.input_symbols << "\n";
    out << "max_work_symbols=" << config.caps.work_symbols << "\n";
    out << "max_pi=" << config.max_pi << "\n";
    out << "horizon_multiplier=" << config.horizon_multiplier << "\n";
    for (auto v : {Verdict::Equal, Verdict::EngineSuperset, Verdict::Missing, Verdict::Inconclusive})
        out << "count_" << to_string(v) << "=" << s.count(v) << "\n";
    out << "exhaustive_trials=" << s.exhaustive_trials << "\n";
    out << "completeness_violations=" << s.completeness_violations << "\n";
    out << "acceptance_supersets=" << s.acceptance_supersets << "\n";
    out << "size_bound_violations=" << s.size_bound_violations << "\n";
    out << "max_relation_size=" << s.max_relation_size << "\n";
    for (const auto& h : s.bundles) out << "bundle=" << h << "\n";
    return out.str();
}

std::string finding_hash(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon) {
    return stable_hash(serialize_machine(spec) + "\ninput=" + format_input(input, spec.symbols()) +
                       "\npi=" + std::to_string(geometry.pi) + "\nhorizon=" + std::to_string(horizon) + "\n");
}

void write_bundle(const std::filesystem::path& dir, const Finding& f) {
    std::filesystem::create_directories(dir);
    write_text_file(dir / (f.hash + ".pm"), serialize_machine(f.spec));
    write_text_file(dir / (f.hash + ".input"), format_input(f.input, f.spec.symbols()) + "\n");
    write_text_file(dir / (f.hash + ".report"),
                    "trial=" + std::to_string(f.trial) + "\nshrink_steps=" + std::to_string(f.shrink_steps) + "\n" +
                        format_report(f.spec, f.report));
}

Bundle load_bundle(const std::filesystem::path& dir, const std::string& hash) {
    auto parsed = load_machine_file(dir / (hash + ".pm"));
    auto* pm = std::get_if<PmSpec>(&parsed.machine);
    if (!pm) throw ModelError("bundle " + hash + " does not hold a periodic machine");
    std::string input_text = read_text_file(dir / (hash + ".input"));
    while (!input_text.empty() && (input_text.back() == '\n' || input_text.back() == '\r')) input_text.pop_back();
    Word input = parse_input(input_text, pm->symbols());

    std::optional<Time> pi, horizon;
    std::optional<Verdict> recorded;
    std::istringstream report(read_text_file(dir / (hash + ".report")));
    for (std::string line; std::getline(report, line);) {
        auto eq = line.find('=');
        if (eq == std::string::npos || line.find(' ') < eq) continue;
        const auto key = line.substr(0, eq);
        const auto value = line.substr(eq + 1);
        if (key == "pi") pi = std::stoll(value);
        if (key == "horizon") horizon = std::stoll(value);
        if (key == "verdict") recorded = parse_verdict(value);
    }
    if (!pi || !horizon) throw ModelError("bundle " + hash + " report lacks pi or horizon");
    auto geometry = TapeGeometry::with_pi(static_cast<Time>(input.size()), *pi);
    return Bundle{std::move(*pm), std::move(input), geometry, *horizon, recorded};
}

}  // namespace pmlab
