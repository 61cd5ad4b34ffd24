#pragma once

#include <string>
#include <utility>
#include <vector>

#include "randop/scenario.hpp"

namespace randop {

/// Report generation: every requested analysis in scenario order, all
/// numbers as exact rational strings, no randomness and no clocks, so a
/// scenario always produces the same bytes.
namespace report_detail {

inline Json event_to_json(const Event& ev) {
    Json ids = Json::array();
    for (const auto& id : ev.atom_ids()) ids.push_back(id);
    return ids;
}

inline Json profile_to_json(const ContinuityProfile& p) {
    Json j;
    j["method"] = p.method == ContinuityProfile::Method::Exact ? "exact" : "bracket";
    j["alpha_lower"] = format_rational(p.alpha_lower);
    j["alpha_upper"] = format_rational(p.alpha_upper);
    if (p.method == ContinuityProfile::Method::Exact)
        j["alpha"] = format_rational(p.alpha());
    Json steps = Json::array();
    for (const auto& s : p.steps) {
        Json js;
        js["from_m"] = format_rational(s.from_m);
        js["value"] = format_rational(s.value);
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    if (!p.grid.empty()) {
        Json grid = Json::array();
        for (const auto& row : p.grid) {
            Json jr;
            jr["m"] = format_rational(row.m);
            jr["lower"] = format_rational(row.lower);
            jr["upper"] = format_rational(row.upper);
            grid.push_back(std::move(jr));
        }
        j["grid"] = std::move(grid);
    }
    return j;
}

inline Json witness_to_json(const WitnessBundle& w) {
    Json j;
    j["tau"] = format_rational(w.tau);
    j["eps"] = format_rational(w.eps);
    if (w.delta) j["delta"] = format_rational(*w.delta);
    if (w.bound) j["bound"] = format_rational(*w.bound);
    return j;
}

inline Json run_alpha(const Scenario& s) {
    auto profile = continuity_profile(s.op());
    auto best = best_conditional(s.op());
    Json j = profile_to_json(profile);
    j["omega0"] = Json{{"atoms", event_to_json(best.event)},
                       {"prob", format_rational(best.probability)}};
    return j;
}

inline Json run_profile(const Scenario& s, const ProbeSet& probes) {
    return profile_to_json(boundedness_profile(s.op(), probes, s.m_grid));
}

inline Json run_clauses(const Scenario& s, const AnalysisRequest& a, const ProbeSet& probes) {
    static const std::vector<Clause> kAll = {
        Clause::Lipschitz,          Clause::UniformlyContinuous, Clause::Continuous,
        Clause::ContinuousAtPoint,  Clause::ContinuousAtOrigin,  Clause::Bounded,
        Clause::UniformBound};
    Json levels = Json::array();
    for (const auto& eps : a.eps_levels) {
        Json checks = Json::array();
        for (auto clause : kAll) {
            WitnessBundle bundle;
            bundle.tau = s.tau_grid.front();
            bundle.eps = eps;
            auto r = check_clause(s.op(), clause, bundle, probes, basis(1, s.domain));
            Json jc;
            jc["clause"] = std::string(clause_name(clause));
            jc["verdict"] = r.verdict == ClauseCheck::Verdict::Holds    ? "holds"
                            : r.verdict == ClauseCheck::Verdict::Fails ? "fails"
                                                                       : "undecided";
            if (r.verdict == ClauseCheck::Verdict::Holds)
                jc["witness"] = witness_to_json(r.witness);
            if (r.verdict == ClauseCheck::Verdict::Fails) {
                Json demos = Json::array();
                for (const auto& d : r.demos) {
                    Json jd;
                    jd["m"] = format_rational(d.m);
                    jd["probe"] = vector_to_json(d.probe);
                    jd["prob"] = format_rational(d.prob);
                    demos.push_back(std::move(jd));
                }
                jc["demos"] = std::move(demos);
                if (r.refuting_x) jc["refuting_x"] = vector_to_json(*r.refuting_x);
                if (r.refuting_y) jc["refuting_y"] = vector_to_json(*r.refuting_y);
            }
            if (!r.note.empty()) jc["note"] = r.note;
            checks.push_back(std::move(jc));
        }
        Json jl;
        jl["eps"] = format_rational(eps);
        jl["checks"] = std::move(checks);
        levels.push_back(std::move(jl));
    }
    Json j;
    j["levels"] = std::move(levels);
    return j;
}

inline Json run_conditional(const Scenario& s) {
    const auto& T = s.op();
    auto best = best_conditional(T);
    Json j;
    j["omega0"] = Json{{"atoms", event_to_json(best.event)},
                       {"prob", format_rational(best.probability)}};
    if (!best.event.is_empty()) {
        auto res = is_stochastically_continuous(restrict_operator(T, best.event));
        j["stochastically_continuous"] = res.continuous;
        if (res.continuous) j["witness_bound"] = format_rational(res.witness_bound);
        Json masses = Json::array();
        auto cond = condition(T.space(), best.event);
        for (const auto& a : cond.atoms()) {
            Json jm;
            jm["id"] = a.id;
            jm["mass"] = format_rational(a.mass);
            masses.push_back(std::move(jm));
        }
        j["conditioned_masses"] = std::move(masses);
    } else {
        j["stochastically_continuous"] = false;
        j["note"] = "no positive-probability event gives a stochastically continuous "
                    "restriction";
    }

    // the constructive chain of bound events for a reference probe, at the
    // grid levels below the certified continuity level
    auto profile = continuity_profile(T);
    std::vector<Rational> levels(s.eps_grid);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<Rational> eps_seq, m_seq;
    for (const auto& eps : levels) {
        if (eps <= 0 || eps >= profile.alpha_lower) continue;
        if (auto m = profile.uniform_bound_above(eps)) {
            eps_seq.push_back(eps);
            m_seq.push_back(*m);
        }
    }
    if (!eps_seq.empty()) {
        auto chain = bound_event_chain(T, basis(1, s.domain), eps_seq, m_seq);
        Json links = Json::array();
        for (const auto& link : chain.links) {
            Json jl;
            jl["eps"] = format_rational(link.eps);
            jl["bound"] = format_rational(link.bound);
            jl["event"] = event_to_json(link.event);
            jl["event_prob"] = format_rational(link.event_prob);
            jl["union"] = event_to_json(link.running_union);
            jl["union_prob"] = format_rational(link.union_prob);
            links.push_back(std::move(jl));
        }
        Json jchain;
        jchain["probe"] = vector_to_json(chain.probe);
        jchain["links"] = std::move(links);
        jchain["limit_union"] = event_to_json(chain.limit_union);
        jchain["limit_prob"] = format_rational(chain.limit_prob);
        j["bound_event_chain"] = std::move(jchain);
    }
    return j;
}

inline Json run_closed_graph(const Scenario& s, const AnalysisRequest& a) {
    auto check = closed_graph_check(s.op(), a.specs);
    Json j;
    switch (check.status) {
        case ClosedGraphCheck::Status::Consistent: j["status"] = "consistent"; break;
        case ClosedGraphCheck::Status::ConverseGap: j["status"] = "converse_gap"; break;
        case ClosedGraphCheck::Status::Inconclusive: j["status"] = "inconclusive"; break;
    }
    j["alpha_upper"] = format_rational(check.graph.alpha_upper);
    j["alpha_T"] = Json{{"lower", format_rational(check.profile.alpha_lower)},
                        {"upper", format_rational(check.profile.alpha_upper)}};
    if (!check.note.empty()) j["note"] = check.note;

    constexpr long kWitnessTerms = 6;
    Json probes = Json::array();
    for (const auto& p : check.graph.probes) {
        Json jp;
        jp["spec"] = spec_to_json(p.spec);
        jp["status"] = p.status == SeparatingProbe::Status::Detected   ? "detected"
                       : p.status == SeparatingProbe::Status::Diverges ? "diverges"
                                                                       : "undecided";
        if (!p.detail.empty()) jp["detail"] = p.detail;
        if (p.status == SeparatingProbe::Status::Detected) {
            jp["p_zero"] = format_rational(p.p_zero);
            Json limit = Json::object();
            for (std::size_t i = 0; i < s.space().size(); ++i)
                limit[s.space().atom(i).id] = vector_to_json(p.limit->at(i));
            jp["limit"] = std::move(limit);
            Json terms = Json::array();
            bool materializable = p.spec.kind() != SequenceSpec::Kind::UserPrefix ||
                                  p.spec.tail() == SequenceSpec::Tail::Null;
            if (materializable)
                for (long k = 1; k <= kWitnessTerms; ++k)
                    terms.push_back(vector_to_json(p.spec.term(k, s.domain)));
            jp["witness_terms"] = std::move(terms);
            // per-tau deciding indices certifying the convergence claim
            auto conv = converges_in_probability(SeqTrace::applied(s.op(), p.spec),
                                                 *p.limit, s.tau_grid);
            Json rows = Json::array();
            for (const auto& row : conv.rows) {
                Json jr;
                jr["tau"] = format_rational(row.tau);
                jr["empty_from"] = row.index;
                rows.push_back(std::move(jr));
            }
            jp["convergence"] = std::move(rows);
        }
        probes.push_back(std::move(jp));
    }
    j["probes"] = std::move(probes);
    return j;
}

inline Json run_linearity(const Scenario& s, const AnalysisRequest& a) {
    Json cases = Json::array();
    for (const auto& c : a.linearity_cases) {
        Json jc;
        jc["x"] = vector_to_json(c.x);
        jc["y"] = vector_to_json(c.y);
        jc["alpha"] = format_rational(c.alpha);
        jc["beta"] = format_rational(c.beta);
        jc["prob"] = format_rational(
            linearity_probability(s.op(), c.x, c.y, c.alpha, c.beta));
        cases.push_back(std::move(jc));
    }
    Json j;
    j["cases"] = std::move(cases);
    return j;
}

inline Json run_sequential(const Scenario& s, const AnalysisRequest& a) {
    auto check = check_sequential(s.op(), *a.sequence, a.level, s.tau_grid);
    Json j;
    j["spec"] = spec_to_json(*a.sequence);
    j["alpha"] = format_rational(a.level);
    auto verdict_name = [](SequentialCheck::Row::Verdict v) {
        switch (v) {
            case SequentialCheck::Row::Verdict::Holds: return "holds";
            case SequentialCheck::Row::Verdict::Refuted: return "refuted";
            case SequentialCheck::Row::Verdict::Undecided: return "undecided";
        }
        return "?";
    };
    j["verdict"] = verdict_name(check.verdict);
    if (check.affirmative_caveat)
        j["caveat"] = "a single null sequence cannot affirm probable continuity; "
                      "affirmative verdicts are advisory, refutations are sound";
    Json rows = Json::array();
    for (const auto& row : check.rows) {
        Json jr;
        jr["tau"] = format_rational(row.tau);
        jr["liminf_lower"] = format_rational(row.liminf_lower);
        jr["liminf_upper"] = format_rational(row.liminf_upper);
        jr["stable_from"] = row.stable_from;
        jr["verdict"] = verdict_name(row.verdict);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j;
}

} // namespace report_detail

/// Runs the scenario's analyses (optionally restricted to a subset by name)
/// and assembles the versioned report document.
inline Json run_scenario(const Scenario& s, const std::vector<std::string>& only = {}) {
    Json report;
    report["schema_version"] = "1";
    report["scenario"] = scenario_to_json(s);

    ProbeSet probes = ProbeSet::standard(s.probe_config, s.domain);
    Json results = Json::array();
    for (const auto& a : s.analyses) {
        std::string kind(analysis_kind_name(a.kind));
        if (!only.empty() && std::find(only.begin(), only.end(), kind) == only.end()) continue;
        Json body;
        switch (a.kind) {
            case AnalysisRequest::Kind::Alpha: body = report_detail::run_alpha(s); break;
            case AnalysisRequest::Kind::Profile:
                body = report_detail::run_profile(s, probes);
                break;
            case AnalysisRequest::Kind::Clauses:
                body = report_detail::run_clauses(s, a, probes);
                break;
            case AnalysisRequest::Kind::Conditional:
                body = report_detail::run_conditional(s);
                break;
            case AnalysisRequest::Kind::ClosedGraph:
                body = report_detail::run_closed_graph(s, a);
                break;
            case AnalysisRequest::Kind::Linearity:
                body = report_detail::run_linearity(s, a);
                break;
            case AnalysisRequest::Kind::Sequential:
                body = report_detail::run_sequential(s, a);
                break;
        }
        Json entry;
        entry["analysis"] = kind;
        entry["result"] = std::move(body);
        results.push_back(std::move(entry));
    }
    report["results"] = std::move(results);
    return report;
}

} // namespace randop
