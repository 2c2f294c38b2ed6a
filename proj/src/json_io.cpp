#include "eqfix/json_io.hpp"

#include <fstream>
#include <sstream>

#include "eqfix/error.hpp"

namespace eqfix {

using nlohmann::json;

namespace {

const json& require(const json& j, const std::string& key)
{
    if (!j.is_object() || !j.contains(key))
        fail("InvalidInput", "missing field '" + key + "'");
    return j.at(key);
}

int to_int(const json& j, const std::string& what)
{
    if (!j.is_number_integer())
        fail("InvalidInput", what + " must be an integer");
    return j.get<int>();
}

}  // namespace

json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail("InvalidInput", "cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("InvalidInput", "malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

GroupPtr group_from_json(const json& j)
{
    const std::string kind = require(j, "kind").get<std::string>();
    if (kind == "table") {
        std::vector<std::vector<int>> table;
        for (const auto& row : require(j, "mul"))
            table.push_back(row.get<std::vector<int>>());
        return FiniteGroup::from_multiplication_table(table);
    }
    if (kind == "perm") {
        const int degree = to_int(require(j, "degree"), "degree");
        std::vector<std::vector<int>> gens;
        for (const auto& g : require(j, "generators"))
            gens.push_back(g.get<std::vector<int>>());
        return FiniteGroup::from_permutation_generators(degree, gens);
    }
    fail("InvalidInput", "unknown group kind '" + kind + "'");
}

json group_to_json(const FiniteGroup& g)
{
    json mul = json::array();
    for (int a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.order(); ++b)
            row.push_back(g.mul(a, b));
        mul.push_back(std::move(row));
    }
    return json{{"kind", "table"}, {"mul", std::move(mul)}};
}

GCWComplex complex_from_json(const json& j)
{
    GroupPtr group =
        j.is_object() && j.contains("group") ? group_from_json(j.at("group")) : FiniteGroup::trivial();

    std::vector<std::pair<int, int>> cells;
    for (const auto& c : require(j, "cells"))
        cells.emplace_back(to_int(require(c, "id"), "cell id"), to_int(require(c, "dim"), "dim"));

    std::map<int, std::vector<std::pair<int, int>>> boundary;
    if (j.contains("boundary"))
        for (const auto& [key, rows] : j.at("boundary").items()) {
            std::vector<std::pair<int, int>> faces;
            for (const auto& r : rows) {
                if (!r.is_array() || r.size() != 2)
                    fail("InvalidInput", "boundary entries are [face, coefficient] pairs");
                faces.emplace_back(to_int(r[0], "face id"), to_int(r[1], "incidence"));
            }
            boundary[std::stoi(key)] = std::move(faces);
        }

    std::map<int, std::vector<std::array<int, 3>>> action;
    if (j.contains("action"))
        for (const auto& [key, rows] : j.at("action").items()) {
            std::vector<std::array<int, 3>> entries;
            for (const auto& r : rows) {
                if (!r.is_array() || r.size() != 3)
                    fail("InvalidInput", "action entries are [id, image, sign] triples");
                entries.push_back({to_int(r[0], "id"), to_int(r[1], "image"), to_int(r[2], "sign")});
            }
            action[std::stoi(key)] = std::move(entries);
        }

    return GCWComplex(std::move(group), std::move(cells), boundary, action);
}

ExtensionData extension_from_json(const json& j)
{
    auto gamma = group_from_json(require(j, "gamma"));
    auto pi = require(j, "pi").get<std::vector<int>>();
    const auto& onto = require(j, "onto_g");
    auto g = group_from_json(require(onto, "g"));
    auto map = require(onto, "map").get<std::vector<int>>();
    return make_extension(std::move(gamma), pi, std::move(g), std::move(map));
}

CoverModel cover_from_json(const json& j, std::optional<ExtensionData> ext)
{
    auto complex = complex_from_json(j);
    auto kernel = require(j, "free_kernel").get<std::vector<int>>();
    return CoverModel(std::move(complex), kernel, std::move(ext));
}

std::pair<GCWComplex, std::map<int, long long>> profile_from_json(
    const json& j, const std::filesystem::path& base_dir)
{
    const auto& cx = require(j, "complex");
    GCWComplex target = cx.is_string()
                            ? complex_from_json(load_json_file(base_dir / cx.get<std::string>()))
                            : complex_from_json(cx);
    std::map<int, long long> values;
    for (const auto& [key, v] : require(j, "values").items())
        values[std::stoi(key)] = v.get<long long>();
    return {std::move(target), std::move(values)};
}

DeficitVector deficits_from_json(const json& j)
{
    DeficitVector v;
    v.components = require(j, "components").get<std::vector<int>>();
    v.entries = require(j, "entries").get<std::vector<long long>>();
    if (v.components.size() != v.entries.size())
        fail("InvalidInput", "components and entries must have equal length");
    // canonical order: by component id
    std::vector<size_t> order(v.components.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return v.components[a] < v.components[b]; });
    DeficitVector sorted;
    for (size_t i : order) {
        sorted.components.push_back(v.components[i]);
        sorted.entries.push_back(v.entries[i]);
    }
    return sorted;
}

std::map<int, long long> fixed_euler_from_json(const json& j)
{
    auto components = require(j, "components").get<std::vector<int>>();
    auto chi = require(j, "chi").get<std::vector<long long>>();
    if (components.size() != chi.size())
        fail("InvalidInput", "components and chi must have equal length");
    std::map<int, long long> out;
    for (size_t i = 0; i < components.size(); ++i)
        out[components[i]] = chi[i];
    return out;
}

std::string rational_string(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

namespace {

json subgroup_json(const Subgroup& s)
{
    return json(s.elements());
}

const char* tag_name(OliverTag t)
{
    switch (t) {
    case OliverTag::Zero: return "Zero";
    case OliverTag::One: return "One";
    default: return "NontrivialUnknown";
    }
}

json modulus_json(const Modulus& m)
{
    if (!m.is_known())
        return nullptr;
    return json(*m.value);
}

const char* tristate_name(TriState t)
{
    switch (t) {
    case TriState::Pass: return "pass";
    case TriState::Fail: return "fail";
    default: return "indeterminate";
    }
}

}  // namespace

json classify_report(const OliverClass& c)
{
    json witness = nullptr;
    if (c.tag == OliverTag::Zero)
        witness = json{{"p", subgroup_json(*c.witness_p)}};
    else if (c.tag == OliverTag::NontrivialUnknown)
        witness = json{{"p", subgroup_json(*c.witness_p)}, {"h", subgroup_json(*c.witness_h)}};
    return json{{"schema", "classify/1"},
                {"tag", tag_name(c.tag)},
                {"witness", std::move(witness)},
                {"m_g", modulus_json(square_free_modulus(c))}};
}

json degree_zero_report(const std::vector<std::pair<long long, long long>>& indices,
                        const std::vector<long long>& coefficients)
{
    json idx = json::array();
    long long check = 1;
    for (size_t i = 0; i < indices.size(); ++i) {
        idx.push_back(json{{"prime", indices[i].first}, {"index", indices[i].second}});
        check += coefficients[i] * indices[i].second;
    }
    return json{{"schema", "degree-zero/1"},
                {"indices", std::move(idx)},
                {"coefficients", coefficients},
                {"check", check}};
}

json validation_report_json(const ValidationReport& r)
{
    json v = json::array();
    for (const auto& violation : r.violations)
        v.push_back(json{{"rule", violation.rule}, {"detail", violation.detail}});
    return json{{"schema", "validation/1"}, {"ok", r.ok()}, {"violations", std::move(v)}};
}

json subcomplex_report(const GCWComplex& x, const Subcomplex& s)
{
    json comps = json::array();
    for (const auto& c : components(s))
        comps.push_back(json{{"component", x.cell_id(c.positions().front())},
                             {"cells", c.cell_ids()},
                             {"euler_characteristic", euler_characteristic(c)}});
    return json{{"schema", "fixed/1"},
                {"cells", s.cell_ids()},
                {"euler_characteristic", euler_characteristic(s)},
                {"components", std::move(comps)}};
}

json homology_report(const ChainComplex& c, std::optional<long long> mod_p)
{
    if (mod_p) {
        return json{{"schema", "homology/1"},
                    {"field", "F" + std::to_string(*mod_p)},
                    {"betti", homology_mod_p(c, *mod_p)}};
    }
    json degrees = json::array();
    for (const auto& h : homology_integral(c)) {
        std::vector<long long> torsion;
        for (const auto& t : h.torsion)
            torsion.push_back(t.convert_to<long long>());
        degrees.push_back(json{{"betti", h.betti}, {"torsion", torsion}});
    }
    return json{{"schema", "homology/1"}, {"ring", "Z"}, {"degrees", std::move(degrees)}};
}

json rebalance_report(const GCWComplex& target, const RebalanceResult& r, long long modulus)
{
    json moves = json::array();
    for (const auto& m : r.moves) {
        json mv{{"sigma", m.sigma}, {"a", m.a}, {"b", m.b},
                {"base", m.base},   {"entry", m.entry}};
        if (m.c) {
            mv["c"] = *m.c;
            mv["stranded"] = *m.stranded;
        }
        moves.push_back(std::move(mv));
    }
    json final_profile = json::object();
    for (int p = 0; p < target.cell_count(); ++p)
        final_profile[std::to_string(target.cell_id(p))] = r.final_closed_values[p];
    return json{{"schema", "rebalance/1"},
                {"modulus", modulus},
                {"moves", std::move(moves)},
                {"final_profile", std::move(final_profile)}};
}

json smith_report_json(const SmithReport& r)
{
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(json{{"subgroup", e.subgroup},
                               {"prime", e.prime},
                               {"betti_x", e.betti_x},
                               {"betti_y", e.betti_y},
                               {"pass", e.pass}});
    return json{{"schema", "smith/1"}, {"pass", r.pass}, {"subgroups", std::move(entries)}};
}

json rank_report(const ConjClassVector& v)
{
    json classes = json::array();
    for (size_t i = 0; i < v.classes.size(); ++i)
        classes.push_back(json{{"class", v.classes[i]},
                               {"coefficient", rational_string(v.coefficients[i])}});
    return json{{"schema", "rank/1"}, {"classes", std::move(classes)}};
}

json cyclic_report(const CyclicCheckResult& r)
{
    return json{{"schema", "cyclic-check/1"},
                {"pass", r.pass},
                {"gamma", r.gamma},
                {"components", r.grouped_components},
                {"sum_chi_f", r.sum_chi_f},
                {"sum_chi_c", r.sum_chi_c},
                {"rank_coefficient", rational_string(r.rank_coefficient)},
                {"expected_coefficient", rational_string(r.expected_coefficient)},
                {"cross_check_pass", r.cross_check_pass}};
}

json compwise_report(const CompwiseCheckResult& r)
{
    json groups = json::array();
    for (const auto& g : r.groups)
        groups.push_back(json{{"d_component", g.d_component_id},
                              {"pair_class", g.pair_class_id},
                              {"components", g.c_components},
                              {"sum_chi_f", g.sum_chi_f},
                              {"sum_chi_c", g.sum_chi_c},
                              {"pass", g.pass}});
    return json{{"schema", "compwise-check/1"}, {"pass", r.pass}, {"groups", std::move(groups)}};
}

json verdict_report(const ObstructionVerdict& v, const DeficitVector& deficits,
                    const Modulus& modulus)
{
    const char* conclusion = nullptr;
    switch (v.conclusion) {
    case Conclusion::SufficientPass: conclusion = "SufficientPass"; break;
    case Conclusion::NecessaryFail: conclusion = "NecessaryFail"; break;
    case Conclusion::DefinitiveExactPass: conclusion = "DefinitiveExactPass"; break;
    case Conclusion::DefinitiveExactFail: conclusion = "DefinitiveExactFail"; break;
    default: conclusion = "Indeterminate"; break;
    }
    const char* membership = nullptr;
    switch (v.membership) {
    case NyMembership::InLowerBound: membership = "InLowerBound"; break;
    case NyMembership::InUpperBoundOnly: membership = "InUpperBoundOnly"; break;
    case NyMembership::OutsideUpperBound: membership = "OutsideUpperBound"; break;
    default: membership = "Indeterminate"; break;
    }

    json locals = json::array();
    for (size_t i = 0; i < deficits.components.size(); ++i)
        locals.push_back(json{{"component", deficits.components[i]},
                              {"deficit", deficits.entries[i]},
                              {"congruence", tristate_name(v.local_congruences[i])}});
    json cyclic = json::array();
    for (const auto& c : v.cyclic_checks)
        cyclic.push_back(cyclic_report(c));

    json report{{"schema", "verdict/1"},
                {"modulus", modulus_json(modulus)},
                {"global_congruence", tristate_name(v.global_congruence)},
                {"local_congruences", std::move(locals)},
                {"membership", membership},
                {"conclusion", conclusion},
                {"reason", v.reason}};
    report["weakly_g_connected"] =
        v.weakly_g_connected.has_value() ? json(*v.weakly_g_connected) : json(nullptr);
    report["trace"] = json{{"cyclic", std::move(cyclic)},
                           {"compwise", v.compwise_check
                                            ? compwise_report(*v.compwise_check)
                                            : json(nullptr)}};
    report["smith"] = nullptr;  // supplied by `check smith`, not by this pipeline
    return report;
}

}  // namespace eqfix
