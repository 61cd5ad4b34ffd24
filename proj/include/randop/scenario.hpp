#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randop/graph.hpp"

namespace randop {

using Json = nlohmann::ordered_json;

/// One requested analysis from a scenario document.
struct AnalysisRequest {
    enum class Kind { Alpha, Profile, Clauses, Conditional, ClosedGraph, Linearity, Sequential };

    Kind kind = Kind::Alpha;
    std::vector<Rational> eps_levels; // clauses
    std::vector<SequenceSpec> specs;  // closed_graph
    struct LinearityCase {
        SeqVector x, y;
        Rational alpha, beta;
    };
    std::vector<LinearityCase> linearity_cases; // linearity
    std::optional<SequenceSpec> sequence;       // sequential
    Rational level{1};                          // sequential
};

inline std::string_view analysis_kind_name(AnalysisRequest::Kind k) {
    switch (k) {
        case AnalysisRequest::Kind::Alpha: return "alpha";
        case AnalysisRequest::Kind::Profile: return "profile";
        case AnalysisRequest::Kind::Clauses: return "clauses";
        case AnalysisRequest::Kind::Conditional: return "conditional";
        case AnalysisRequest::Kind::ClosedGraph: return "closed_graph";
        case AnalysisRequest::Kind::Linearity: return "linearity";
        case AnalysisRequest::Kind::Sequential: return "sequential";
    }
    return "?";
}

/// A fully validated scenario: the probability space, the operator, the
/// requested analyses and the evaluation grids.
class Scenario {
public:
    std::string name;
    SpaceDescriptor domain, codomain;
    std::vector<AnalysisRequest> analyses;
    ProbeConfig probe_config;
    std::vector<Rational> m_grid, eps_grid, tau_grid;

    const FiniteProbSpace& space() const { return op_->space(); }
    const RandomOperator& op() const { return *op_; }
    void set_operator(RandomOperator op) { op_.emplace(std::move(op)); }

private:
    std::optional<RandomOperator> op_;
};

namespace scenario_detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& message) {
    fail(Errc::ParseError, message, path);
}

inline const Json& expect(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) bad(path + "/" + key, "missing field");
    return j.at(key);
}

inline std::string expect_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = expect(j, key, path);
    if (!v.is_string()) bad(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

inline Rational expect_rational(const Json& j, const char* key, const std::string& path) {
    return parse_rational(expect_string(j, key, path), path + "/" + key);
}

inline long expect_integer(const Json& j, const char* key, const std::string& path) {
    const Json& v = expect(j, key, path);
    if (!v.is_number_integer()) bad(path + "/" + key, "expected an integer");
    return v.get<long>();
}

// rethrow construction failures with the document location attached
template <typename F>
auto located(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (!e.field().empty()) throw;
        throw Error(e.code(), e.message(), path);
    }
}

inline std::vector<Rational> parse_rational_list(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a non-empty array of rational strings");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) bad(path + "/" + std::to_string(i), "expected a rational string");
        out.push_back(parse_rational(j[i].get<std::string>(), path + "/" + std::to_string(i)));
    }
    return out;
}

inline SpaceDescriptor parse_space_descriptor(const Json& j, const std::string& path) {
    std::string kind = expect_string(j, "kind", path);
    if (kind == "c00") return SpaceDescriptor::c00();
    if (kind == "finite_dim")
        return located(path, [&] {
            return SpaceDescriptor::finite_dim(expect_integer(j, "dimension", path));
        });
    bad(path + "/kind", "unknown space kind '" + kind + "'");
}

inline SeqVector parse_vector(const Json& j, const SpaceDescriptor& space,
                              const std::string& path) {
    if (!j.is_object()) bad(path, "expected an index -> rational object");
    std::vector<std::pair<long, Rational>> entries;
    for (const auto& [key, value] : j.items()) {
        long index = 0;
        try {
            index = std::stol(key);
        } catch (...) {
            bad(path + "/" + key, "coordinate index must be an integer");
        }
        if (!value.is_string()) bad(path + "/" + key, "expected a rational string");
        entries.emplace_back(index, parse_rational(value.get<std::string>(), path + "/" + key));
    }
    return located(path, [&] { return SeqVector::from_entries(space, entries); });
}

inline CoeffFamily parse_coeff(const Json& j, const std::string& path) {
    std::string kind = expect_string(j, "kind", path);
    if (kind == "constant") return CoeffFamily::constant(expect_rational(j, "c", path));
    if (kind == "affine")
        return CoeffFamily::affine(expect_rational(j, "a", path),
                                   expect_rational(j, "b", path));
    if (kind == "harmonic")
        return CoeffFamily::harmonic(expect_rational(j, "a", path),
                                     expect_rational(j, "b", path));
    if (kind == "table") {
        const Json& ov = expect(j, "overrides", path);
        if (!ov.is_object()) bad(path + "/overrides", "expected an index -> rational object");
        std::map<long, Rational> overrides;
        for (const auto& [key, value] : ov.items()) {
            long index = 0;
            try {
                index = std::stol(key);
            } catch (...) {
                bad(path + "/overrides/" + key, "override index must be an integer");
            }
            if (!value.is_string())
                bad(path + "/overrides/" + key, "expected a rational string");
            overrides[index] =
                parse_rational(value.get<std::string>(), path + "/overrides/" + key);
        }
        CoeffFamily tail = parse_coeff(expect(j, "tail", path), path + "/tail");
        return located(path, [&] { return CoeffFamily::table(overrides, tail); });
    }
    bad(path + "/kind", "unknown coefficient kind '" + kind + "'");
}

inline LinearMapRep parse_map(const Json& j, const SpaceDescriptor& domain,
                              const SpaceDescriptor& codomain, const std::string& path) {
    std::string kind = expect_string(j, "kind", path);
    if (kind == "zero") return LinearMapRep::zero(domain, codomain);
    if (kind == "diagonal") {
        if (!domain.is_c00() || !codomain.is_c00())
            bad(path, "diagonal maps need c00 domain and codomain");
        return LinearMapRep::diagonal(parse_coeff(expect(j, "coeff", path), path + "/coeff"));
    }
    if (kind == "rank_one") {
        if (!domain.is_c00() || !codomain.is_c00())
            bad(path, "rank-one maps need c00 domain and codomain");
        CoeffFamily weights = parse_coeff(expect(j, "weights", path), path + "/weights");
        SeqVector output =
            parse_vector(expect(j, "output", path), codomain, path + "/output");
        return located(path, [&] { return LinearMapRep::rank_one(weights, output); });
    }
    if (kind == "matrix") {
        const Json& rows = expect(j, "rows", path);
        if (!rows.is_array() || rows.empty()) bad(path + "/rows", "expected a non-empty array");
        std::vector<std::vector<Rational>> parsed;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array())
                bad(path + "/rows/" + std::to_string(r), "expected an array");
            std::vector<Rational> row;
            for (std::size_t c = 0; c < rows[r].size(); ++c) {
                const Json& cell = rows[r][c];
                if (!cell.is_string())
                    bad(path + "/rows/" + std::to_string(r) + "/" + std::to_string(c),
                        "expected a rational string");
                row.push_back(parse_rational(cell.get<std::string>(),
                                             path + "/rows/" + std::to_string(r)));
            }
            parsed.push_back(std::move(row));
        }
        auto m = located(path, [&] { return LinearMapRep::matrix(parsed); });
        if (!(m.domain() == domain) || !(m.codomain() == codomain))
            bad(path, "matrix shape disagrees with the declared spaces");
        return m;
    }
    bad(path + "/kind", "unknown map kind '" + kind + "'");
}

inline SequenceSpec parse_sequence_spec(const Json& j, const SpaceDescriptor& domain,
                                        const std::string& path) {
    std::string kind = expect_string(j, "kind", path);
    if (kind == "scaled_basis")
        return located(path, [&] {
            return SequenceSpec::scaled_basis(static_cast<int>(expect_integer(j, "power", path)));
        });
    if (kind == "scaled_fixed")
        return located(path, [&] {
            return SequenceSpec::scaled_fixed(
                parse_vector(expect(j, "vector", path), domain, path + "/vector"));
        });
    if (kind == "window_sum")
        return located(path,
                       [&] { return SequenceSpec::window_sum(expect_integer(j, "width", path)); });
    if (kind == "user_prefix") {
        const Json& terms = expect(j, "terms", path);
        if (!terms.is_array() || terms.empty())
            bad(path + "/terms", "expected a non-empty array");
        std::vector<SeqVector> prefix;
        for (std::size_t i = 0; i < terms.size(); ++i)
            prefix.push_back(
                parse_vector(terms[i], domain, path + "/terms/" + std::to_string(i)));
        std::string tail = expect_string(j, "tail", path);
        if (tail != "null" && tail != "unknown") bad(path + "/tail", "expected null|unknown");
        return located(path, [&] {
            return SequenceSpec::user_prefix(prefix, tail == "null"
                                                         ? SequenceSpec::Tail::Null
                                                         : SequenceSpec::Tail::Unknown);
        });
    }
    bad(path + "/kind", "unknown sequence kind '" + kind + "'");
}

inline AnalysisRequest parse_analysis(const Json& j, const SpaceDescriptor& domain,
                                      const std::string& path) {
    AnalysisRequest out;
    std::string kind = expect_string(j, "kind", path);
    if (kind == "alpha") {
        out.kind = AnalysisRequest::Kind::Alpha;
    } else if (kind == "profile") {
        out.kind = AnalysisRequest::Kind::Profile;
    } else if (kind == "clauses") {
        out.kind = AnalysisRequest::Kind::Clauses;
        out.eps_levels = parse_rational_list(expect(j, "eps", path), path + "/eps");
    } else if (kind == "conditional") {
        out.kind = AnalysisRequest::Kind::Conditional;
    } else if (kind == "closed_graph") {
        out.kind = AnalysisRequest::Kind::ClosedGraph;
        const Json& specs = expect(j, "specs", path);
        if (!specs.is_array() || specs.empty())
            bad(path + "/specs", "expected a non-empty array");
        for (std::size_t i = 0; i < specs.size(); ++i)
            out.specs.push_back(
                parse_sequence_spec(specs[i], domain, path + "/specs/" + std::to_string(i)));
    } else if (kind == "linearity") {
        out.kind = AnalysisRequest::Kind::Linearity;
        const Json& inputs = expect(j, "inputs", path);
        if (!inputs.is_array() || inputs.empty())
            bad(path + "/inputs", "expected a non-empty array");
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const std::string p = path + "/inputs/" + std::to_string(i);
            AnalysisRequest::LinearityCase c{
                parse_vector(expect(inputs[i], "x", p), domain, p + "/x"),
                parse_vector(expect(inputs[i], "y", p), domain, p + "/y"),
                expect_rational(inputs[i], "alpha", p), expect_rational(inputs[i], "beta", p)};
            out.linearity_cases.push_back(std::move(c));
        }
    } else if (kind == "sequential") {
        out.kind = AnalysisRequest::Kind::Sequential;
        out.sequence = parse_sequence_spec(expect(j, "spec", path), domain, path + "/spec");
        out.level = expect_rational(j, "alpha", path);
    } else {
        fail(Errc::UnknownAnalysis, "unknown analysis '" + kind + "'", path + "/kind");
    }
    return out;
}

} // namespace scenario_detail

inline Scenario parse_scenario(const Json& doc) {
    using namespace scenario_detail;
    if (!doc.is_object()) bad("", "scenario must be a JSON object");
    Scenario s;
    s.name = expect_string(doc, "name", "");

    s.domain = parse_space_descriptor(expect(doc, "domain", ""), "/domain");
    s.codomain = parse_space_descriptor(expect(doc, "codomain", ""), "/codomain");

    const Json& space_j = expect(doc, "space", "");
    const Json& atoms_j = expect(space_j, "atoms", "/space");
    if (!atoms_j.is_array()) bad("/space/atoms", "expected an array");
    std::vector<FiniteProbSpace::Atom> atoms;
    for (std::size_t i = 0; i < atoms_j.size(); ++i) {
        const std::string p = "/space/atoms/" + std::to_string(i);
        atoms.push_back(
            {expect_string(atoms_j[i], "id", p), expect_rational(atoms_j[i], "mass", p)});
    }
    FiniteProbSpace space = located("/space/atoms", [&] { return make_space(atoms); });

    const Json& op_j = expect(doc, "operator", "");
    const Json& maps_j = expect(op_j, "maps", "/operator");
    if (!maps_j.is_array()) bad("/operator/maps", "expected an array");
    std::vector<std::optional<LinearMapRep>> slots(space.size());
    for (std::size_t i = 0; i < maps_j.size(); ++i) {
        const std::string p = "/operator/maps/" + std::to_string(i);
        std::string atom_id = expect_string(maps_j[i], "atom", p);
        if (!space.has_atom(atom_id)) bad(p + "/atom", "unknown atom '" + atom_id + "'");
        std::size_t idx = space.index_of(atom_id);
        if (slots[idx]) bad(p + "/atom", "atom '" + atom_id + "' mapped twice");
        slots[idx] =
            parse_map(expect(maps_j[i], "map", p), s.domain, s.codomain, p + "/map");
    }
    std::vector<LinearMapRep> maps;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i])
            bad("/operator/maps", "no map for atom '" + space.atom(i).id + "'");
        maps.push_back(std::move(*slots[i]));
    }

    std::optional<Corruption> corruption;
    if (op_j.contains("corruption")) {
        const Json& c = op_j.at("corruption");
        const std::string p = "/operator/corruption";
        const Json& ev = expect(c, "event", p);
        if (!ev.is_array()) bad(p + "/event", "expected an array of atom ids");
        std::vector<std::string> ids;
        for (const auto& id : ev) {
            if (!id.is_string()) bad(p + "/event", "expected atom id strings");
            if (!space.has_atom(id.get<std::string>()))
                bad(p + "/event", "unknown atom '" + id.get<std::string>() + "'");
            ids.push_back(id.get<std::string>());
        }
        corruption = Corruption{Event::of_atoms(space, ids),
                                parse_vector(expect(c, "offset", p), s.codomain, p + "/offset")};
    }
    s.set_operator(located("/operator", [&] {
        return RandomOperator(space, std::move(maps), std::move(corruption));
    }));

    const Json& analyses = expect(doc, "analyses", "");
    if (!analyses.is_array() || analyses.empty())
        bad("/analyses", "expected a non-empty array");
    for (std::size_t i = 0; i < analyses.size(); ++i)
        s.analyses.push_back(
            parse_analysis(analyses[i], s.domain, "/analyses/" + std::to_string(i)));

    if (doc.contains("probe_config")) {
        const Json& pc = doc.at("probe_config");
        s.probe_config.basis_max = expect_integer(pc, "basis_max", "/probe_config");
        s.probe_config.comb_width = expect_integer(pc, "comb_width", "/probe_config");
        s.probe_config.window_len = expect_integer(pc, "window_len", "/probe_config");
        if (s.probe_config.basis_max < 1)
            bad("/probe_config/basis_max", "must be at least 1");
    }

    s.m_grid = {Rational(1), Rational(2), Rational(4), Rational(8), Rational(16)};
    s.eps_grid.clear();
    for (int i = 1; i <= 9; ++i) s.eps_grid.push_back(rat(i, 10));
    s.tau_grid = {rat(1, 2), Rational(1), Rational(2)};
    if (doc.contains("grids")) {
        const Json& g = doc.at("grids");
        if (g.contains("M")) s.m_grid = parse_rational_list(g.at("M"), "/grids/M");
        if (g.contains("eps")) s.eps_grid = parse_rational_list(g.at("eps"), "/grids/eps");
        if (g.contains("tau")) s.tau_grid = parse_rational_list(g.at("tau"), "/grids/tau");
    }
    return s;
}

// ---- canonical serialization (the scenario echo in reports) ----

inline Json vector_to_json(const SeqVector& v) {
    Json j = Json::object();
    for (const auto& [idx, value] : v.entries())
        j[std::to_string(idx)] = format_rational(value);
    return j;
}

inline Json coeff_to_json(const CoeffFamily& f) {
    Json j;
    switch (f.kind()) {
        case CoeffFamily::Kind::Constant:
            j["kind"] = "constant";
            j["c"] = format_rational(f.param_a());
            break;
        case CoeffFamily::Kind::Affine:
            j["kind"] = "affine";
            j["a"] = format_rational(f.param_a());
            j["b"] = format_rational(f.param_b());
            break;
        case CoeffFamily::Kind::Harmonic:
            j["kind"] = "harmonic";
            j["a"] = format_rational(f.param_a());
            j["b"] = format_rational(f.param_b());
            break;
        case CoeffFamily::Kind::Table: {
            j["kind"] = "table";
            Json ov = Json::object();
            for (const auto& [n, v] : f.overrides()) ov[std::to_string(n)] = format_rational(v);
            j["overrides"] = std::move(ov);
            j["tail"] = coeff_to_json(f.tail());
            break;
        }
    }
    return j;
}

inline Json map_to_json(const LinearMapRep& m) {
    Json j;
    switch (m.kind()) {
        case LinearMapRep::Kind::Zero: j["kind"] = "zero"; break;
        case LinearMapRep::Kind::Diagonal:
            j["kind"] = "diagonal";
            j["coeff"] = coeff_to_json(m.coeff());
            break;
        case LinearMapRep::Kind::RankOne:
            j["kind"] = "rank_one";
            j["weights"] = coeff_to_json(m.coeff());
            j["output"] = vector_to_json(m.output());
            break;
        case LinearMapRep::Kind::Matrix: {
            j["kind"] = "matrix";
            // recover the cells by applying to basis vectors
            std::vector<std::vector<std::string>> cells(
                static_cast<std::size_t>(m.codomain().dimension),
                std::vector<std::string>(static_cast<std::size_t>(m.domain().dimension)));
            for (long c = 1; c <= m.domain().dimension; ++c) {
                SeqVector col = m.apply(basis(c, m.domain()));
                for (long r = 1; r <= m.codomain().dimension; ++r)
                    cells[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] =
                        format_rational(col.at(r));
            }
            Json rows = Json::array();
            for (const auto& row : cells) {
                Json jr = Json::array();
                for (const auto& cell : row) jr.push_back(cell);
                rows.push_back(std::move(jr));
            }
            j["rows"] = std::move(rows);
            break;
        }
    }
    return j;
}

inline Json spec_to_json(const SequenceSpec& s) {
    Json j;
    switch (s.kind()) {
        case SequenceSpec::Kind::ScaledBasis:
            j["kind"] = "scaled_basis";
            j["power"] = s.power();
            break;
        case SequenceSpec::Kind::ScaledFixed:
            j["kind"] = "scaled_fixed";
            j["vector"] = vector_to_json(s.fixed());
            break;
        case SequenceSpec::Kind::WindowSum:
            j["kind"] = "window_sum";
            j["width"] = s.width();
            break;
        case SequenceSpec::Kind::UserPrefix: {
            j["kind"] = "user_prefix";
            Json terms = Json::array();
            for (const auto& t : s.prefix()) terms.push_back(vector_to_json(t));
            j["terms"] = std::move(terms);
            j["tail"] = s.tail() == SequenceSpec::Tail::Null ? "null" : "unknown";
            break;
        }
    }
    return j;
}

inline Json space_descriptor_to_json(const SpaceDescriptor& d) {
    Json j;
    if (d.is_c00()) {
        j["kind"] = "c00";
    } else {
        j["kind"] = "finite_dim";
        j["dimension"] = d.dimension;
    }
    return j;
}

inline Json scenario_to_json(const Scenario& s) {
    Json j;
    j["name"] = s.name;
    Json atoms = Json::array();
    for (const auto& a : s.space().atoms()) {
        Json atom;
        atom["id"] = a.id;
        atom["mass"] = format_rational(a.mass);
        atoms.push_back(std::move(atom));
    }
    j["space"] = Json{{"atoms", std::move(atoms)}};
    j["domain"] = space_descriptor_to_json(s.domain);
    j["codomain"] = space_descriptor_to_json(s.codomain);

    Json maps = Json::array();
    for (std::size_t i = 0; i < s.space().size(); ++i) {
        Json entry;
        entry["atom"] = s.space().atom(i).id;
        entry["map"] = map_to_json(s.op().map_at(i));
        maps.push_back(std::move(entry));
    }
    Json op;
    op["maps"] = std::move(maps);
    if (s.op().corruption()) {
        Json c;
        Json ids = Json::array();
        for (const auto& id : s.op().corruption()->event.atom_ids()) ids.push_back(id);
        c["event"] = std::move(ids);
        c["offset"] = vector_to_json(s.op().corruption()->offset);
        op["corruption"] = std::move(c);
    }
    j["operator"] = std::move(op);

    Json analyses = Json::array();
    for (const auto& a : s.analyses) {
        Json ja;
        ja["kind"] = std::string(analysis_kind_name(a.kind));
        switch (a.kind) {
            case AnalysisRequest::Kind::Clauses: {
                Json eps = Json::array();
                for (const auto& e : a.eps_levels) eps.push_back(format_rational(e));
                ja["eps"] = std::move(eps);
                break;
            }
            case AnalysisRequest::Kind::ClosedGraph: {
                Json specs = Json::array();
                for (const auto& sp : a.specs) specs.push_back(spec_to_json(sp));
                ja["specs"] = std::move(specs);
                break;
            }
            case AnalysisRequest::Kind::Linearity: {
                Json inputs = Json::array();
                for (const auto& c : a.linearity_cases) {
                    Json jc;
                    jc["x"] = vector_to_json(c.x);
                    jc["y"] = vector_to_json(c.y);
                    jc["alpha"] = format_rational(c.alpha);
                    jc["beta"] = format_rational(c.beta);
                    inputs.push_back(std::move(jc));
                }
                ja["inputs"] = std::move(inputs);
                break;
            }
            case AnalysisRequest::Kind::Sequential:
                ja["spec"] = spec_to_json(*a.sequence);
                ja["alpha"] = format_rational(a.level);
                break;
            default: break;
        }
        analyses.push_back(std::move(ja));
    }
    j["analyses"] = std::move(analyses);

    j["probe_config"] = Json{{"basis_max", s.probe_config.basis_max},
                             {"comb_width", s.probe_config.comb_width},
                             {"window_len", s.probe_config.window_len}};
    Json grids;
    Json mg = Json::array(), eg = Json::array(), tg = Json::array();
    for (const auto& m : s.m_grid) mg.push_back(format_rational(m));
    for (const auto& e : s.eps_grid) eg.push_back(format_rational(e));
    for (const auto& t : s.tau_grid) tg.push_back(format_rational(t));
    grids["M"] = std::move(mg);
    grids["eps"] = std::move(eg);
    grids["tau"] = std::move(tg);
    j["grids"] = std::move(grids);
    return j;
}

} // namespace randop
