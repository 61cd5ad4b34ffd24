// randop: exact analyses of linear random operators over finite probability
// spaces. Subcommands:
//
//   randop run <scenario.json> [--report out.json] [--analysis name]...
//              [--probe-basis-max N]
//   randop validate <scenario.json>
//
// Exit codes: 0 success, 2 scenario error (parse or validation),
// 3 internal invariant violation (a result that would falsify a proven
// theorem aborts loudly rather than reporting).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "randop/randop.hpp"

namespace {

using randop::Json;

Json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) randop::fail(randop::Errc::ParseError, "cannot open '" + path + "'");
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded())
        randop::fail(randop::Errc::ParseError, "not valid JSON: '" + path + "'");
    return doc;
}

std::string summarize(const std::string& kind, const Json& r) {
    std::ostringstream out;
    out << kind << ":";
    if (kind == "alpha" || kind == "profile") {
        out << " method=" << r.at("method").get<std::string>();
        if (r.contains("alpha"))
            out << " alpha=" << r.at("alpha").get<std::string>();
        else
            out << " alpha_lower=" << r.at("alpha_lower").get<std::string>()
                << " alpha_upper=" << r.at("alpha_upper").get<std::string>();
    } else if (kind == "clauses") {
        for (const auto& level : r.at("levels")) {
            int holds = 0, fails = 0, undecided = 0;
            for (const auto& c : level.at("checks")) {
                auto v = c.at("verdict").get<std::string>();
                holds += v == "holds";
                fails += v == "fails";
                undecided += v == "undecided";
            }
            out << " eps=" << level.at("eps").get<std::string>() << "(" << holds << "H/"
                << fails << "F/" << undecided << "U)";
        }
    } else if (kind == "conditional") {
        out << " omega0_prob=" << r.at("omega0").at("prob").get<std::string>();
    } else if (kind == "closed_graph") {
        out << " status=" << r.at("status").get<std::string>()
            << " alpha_upper=" << r.at("alpha_upper").get<std::string>();
    } else if (kind == "linearity") {
        for (const auto& c : r.at("cases")) out << " prob=" << c.at("prob").get<std::string>();
    } else if (kind == "sequential") {
        out << " verdict=" << r.at("verdict").get<std::string>();
    }
    return out.str();
}

int run_command(const std::string& scenario_path, const std::string& report_path,
                const std::vector<std::string>& only, long probe_basis_max) {
    randop::Scenario scenario = randop::parse_scenario(load_document(scenario_path));
    if (probe_basis_max > 0) scenario.probe_config.basis_max = probe_basis_max;
    for (const auto& name : only) {
        bool known = false;
        for (auto kind :
             {randop::AnalysisRequest::Kind::Alpha, randop::AnalysisRequest::Kind::Profile,
              randop::AnalysisRequest::Kind::Clauses,
              randop::AnalysisRequest::Kind::Conditional,
              randop::AnalysisRequest::Kind::ClosedGraph,
              randop::AnalysisRequest::Kind::Linearity,
              randop::AnalysisRequest::Kind::Sequential})
            known |= name == randop::analysis_kind_name(kind);
        if (!known)
            randop::fail(randop::Errc::UnknownAnalysis, "unknown analysis '" + name + "'");
    }

    Json report = randop::run_scenario(scenario, only);
    std::cout << "scenario " << scenario.name << "\n";
    for (const auto& entry : report.at("results"))
        std::cout << "  "
                  << summarize(entry.at("analysis").get<std::string>(), entry.at("result"))
                  << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out)
            randop::fail(randop::Errc::ParseError, "cannot write '" + report_path + "'");
        out << report.dump(2) << "\n";
        std::cout << "report written to " << report_path << "\n";
    }
    return 0;
}

int validate_command(const std::string& scenario_path) {
    randop::Scenario scenario = randop::parse_scenario(load_document(scenario_path));
    std::cout << "ok: " << scenario.name << " (" << scenario.space().size() << " atoms, "
              << scenario.analyses.size() << " analyses)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of continuity and closed-graph levels for linear "
                 "random operators on finite probability spaces"};
    app.require_subcommand(1);

    std::string scenario_path, report_path;
    std::vector<std::string> analyses;
    long probe_basis_max = 0;

    auto* run = app.add_subcommand("run", "run a scenario's analyses");
    run->add_option("scenario", scenario_path, "scenario JSON document")->required();
    run->add_option("--report", report_path, "write the full report to this path");
    run->add_option("--analysis", analyses,
                    "run only these analyses (repeatable, overrides the scenario list)");
    run->add_option("--probe-basis-max", probe_basis_max,
                    "override the probe set's largest basis index");

    auto* validate = app.add_subcommand("validate", "parse and validate a scenario");
    validate->add_option("scenario", scenario_path, "scenario JSON document")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(scenario_path, report_path, analyses, probe_basis_max);
        return validate_command(scenario_path);
    } catch (const randop::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == randop::Errc::InvariantViolation ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
