#include "pmlab/diff.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "pmlab/machine_io.hpp"

namespace pmlab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "EQUAL";
        case Verdict::EngineSuperset: return "ENGINE_SUPERSET";
        case Verdict::Missing: return "MISSING";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
    for (auto v : {Verdict::Equal, Verdict::EngineSuperset, Verdict::Missing, Verdict::Inconclusive})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

bool DiffReport::completeness_violated() const {
    if (std::any_of(rows.begin(), rows.end(), [](const DiffRow& r) { return r.verdict == Verdict::Missing; }))
        return true;
    return oracle_accepts.value_or(false) && !engine_accepts;
}

bool DiffReport::acceptance_superset() const { return oracle_accepts && !*oracle_accepts && engine_accepts; }

Verdict DiffReport::verdict() const {
    if (completeness_violated()) return Verdict::Missing;
    const bool superset = acceptance_superset() || std::any_of(rows.begin(), rows.end(), [](const DiffRow& r) {
                              return r.verdict == Verdict::EngineSuperset;
                          });
    if (superset) return Verdict::EngineSuperset;
    const bool open = !oracle_accepts || std::any_of(rows.begin(), rows.end(), [](const DiffRow& r) {
                          return r.verdict == Verdict::Inconclusive;
                      });
    return open ? Verdict::Inconclusive : Verdict::Equal;
}

DiffReport diff_run(const PmSpec& spec, const Word& input, const TapeGeometry& geometry, Time horizon,
                    const DiffOptions& options) {
    DiffReport rep;
    rep.machine_hash = stable_hash(serialize_machine(spec));
    rep.input = input;
    rep.geometry = geometry;
    rep.horizon = horizon;
    rep.size_bound = relation_size_bound(spec);

    const auto series = run_relations(spec, input, geometry, horizon, &rep.stats);
    const auto oracle = oracle_relations(spec, input, geometry, horizon, options.budget);

    for (Time t = 0; t <= horizon; ++t) {
        const auto& s = series.at(t);
        const auto& r = oracle.at(t);
        DiffRow row;
        row.t = t;
        row.engine_size = s.size();
        row.oracle_size = r.size();
        rep.max_relation_size = std::max(rep.max_relation_size, s.size());
        if (t >= oracle.exact_levels) {
            row.verdict = Verdict::Inconclusive;
        } else {
            std::set_difference(s.begin(), s.end(), r.begin(), r.end(), std::back_inserter(row.extra));
            std::set_difference(r.begin(), r.end(), s.begin(), s.end(), std::back_inserter(row.missing));
            row.verdict = !row.missing.empty() ? Verdict::Missing
                          : !row.extra.empty() ? Verdict::EngineSuperset
                                               : Verdict::Equal;
        }
        rep.rows.push_back(std::move(row));
    }

    const auto engine = acceptance_of(series, spec);
    rep.engine_accepts = engine.accepted;
    rep.engine_accept_time = engine.accept_time;
    try {
        const auto bfs = config_bfs_accepts(spec, input, geometry, horizon + 1, options.node_cap);
        rep.oracle_accepts = bfs.accepted;
        // Moves before acceptance, minus one, is the time of the accepting choice.
        if (bfs.accept_time) rep.oracle_accept_time = *bfs.accept_time - 1;
    } catch (const BudgetExceeded&) {
        rep.oracle_accepts.reset();
    }
    return rep;
}

std::string format_report(const PmSpec& spec, const DiffReport& rep) {
    std::ostringstream out;
    auto opt_time = [](const std::optional<Time>& t) { return t ? std::to_string(*t) : std::string("-"); };
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& r : rep.rows) ++counts[static_cast<int>(r.verdict)];

    out << "machine=" << rep.machine_hash << "\n";
    out << "input=" << format_input(rep.input, spec.symbols()) << "\n";
    out << "n=" << rep.geometry.n << "\n";
    out << "pi=" << rep.geometry.pi << "\n";
    out << "horizon=" << rep.horizon << "\n";
    out << "verdict=" << to_string(rep.verdict()) << "\n";
    out << "rows_equal=" << counts[0] << "\n";
    out << "rows_engine_superset=" << counts[1] << "\n";
    out << "rows_missing=" << counts[2] << "\n";
    out << "rows_inconclusive=" << counts[3] << "\n";
    out << "engine_accepts=" << (rep.engine_accepts ? "true" : "false") << "\n";
    out << "engine_accept_time=" << opt_time(rep.engine_accept_time) << "\n";
    out << "oracle_accepts=" << (rep.oracle_accepts ? (*rep.oracle_accepts ? "true" : "false") : "unknown") << "\n";
    out << "oracle_accept_time=" << opt_time(rep.oracle_accept_time) << "\n";
    out << "size_bound=" << rep.size_bound << "\n";
    out << "max_relation_size=" << rep.max_relation_size << "\n";
    const auto& c = rep.stats.total;
    out << "lambda_evaluations=" << c.lambda_evaluations << "\n";
    out << "lambda_steps=" << c.lambda_steps << "\n";
    out << "case_checks=" << c.case_checks << "\n";
    out << "deletions=" << c.deletions << "\n";
    out << "sweeps=" << c.sweeps << "\n";
    out << "pivots=" << c.pivots << "\n";
    for (const auto& r : rep.rows) {
        out << "row t=" << r.t << " verdict=" << to_string(r.verdict) << " engine=" << r.engine_size
            << " oracle=" << r.oracle_size << "\n";
    }
    auto listing = [&](const char* tag, const std::vector<Trichoice>& v, Time t) {
        std::vector<std::string> lines;
        for (const auto& tri : v) lines.push_back(std::string(tag) + " " + format_trichoice(spec, t, tri));
        std::sort(lines.begin(), lines.end());
        for (const auto& l : lines) out << l << "\n";
    };
    for (const auto& r : rep.rows) {
        listing("extra", r.extra, r.t);
        listing("missing", r.missing, r.t);
    }
    return out.str();
}

}  // namespace pmlab
