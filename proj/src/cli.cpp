#include "eqfix/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "eqfix/error.hpp"
#include "eqfix/json_io.hpp"

namespace eqfix {

using nlohmann::json;

namespace {

void emit(std::ostream& out, const json& doc, bool pretty)
{
    out << (pretty ? doc.dump(2) : doc.dump()) << "\n";
}

std::vector<int> parse_index_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

GCWComplex load_complex_checked(const std::filesystem::path& path)
{
    auto x = complex_from_json(load_json_file(path));
    auto report = validate(x);
    if (!report.ok())
        fail("InvalidComplex", path.string() + ": " + report.violations.front().rule + ": " +
                                   report.violations.front().detail);
    return x;
}

json schemas_document()
{
    return json{
        {"schema", "schemas/1"},
        {"group",
         {{"table", "{\"kind\":\"table\",\"mul\":[[...]]}; index 0 is the identity"},
          {"perm",
           "{\"kind\":\"perm\",\"degree\":n,\"generators\":[[images of 0..n-1],...]}"}}},
        {"complex",
         "{\"group\":<group?>,\"cells\":[{\"id\":int,\"dim\":int},...],"
         "\"boundary\":{\"<id>\":[[face,coeff],...]},"
         "\"action\":{\"<element>\":[[id,image,sign],...]}}; omitting the action means "
         "every element acts as the identity"},
        {"cover", "complex fields (group = total group) plus \"free_kernel\":[indices]"},
        {"extension",
         "{\"gamma\":<group>,\"pi\":[indices],\"onto_g\":{\"g\":<group>,\"map\":[image of "
         "each gamma element]}}"},
        {"profile",
         "{\"complex\":<path or inline complex>,\"values\":{\"<cell id>\":int}}"},
        {"deficits", "{\"components\":[ids],\"entries\":[ints]}"},
        {"fixed_euler", "{\"components\":[ids],\"chi\":[ints]}"},
        {"subgroups", "referenced as comma-separated element-index lists on the CLI"},
        {"exit_codes",
         "0 pass, 1 a checked condition fails, 2 indeterminate, >=3 input error"}};
}

struct Invocation {
    bool pretty = false;
    bool schema = false;

    std::string group_path;
    std::string complex_path;
    std::string subgroup_list;
    std::optional<long long> mod_p;
    std::string profile_path;
    long long modulus = 0;
    std::string x_path, y_path;
    std::string deficits_path;
    std::optional<long long> n_g_override;
    std::string cover_path;
    std::string extension_path;
    std::string p_subgroup_list;
    std::string fixed_euler_path;
    int element = -1;
};

Subgroup subgroup_from_list(const GroupPtr& g, const std::string& text)
{
    if (text.empty())
        return Subgroup::whole(g);
    return Subgroup(g, parse_index_list(text));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact obstruction calculus for fixed sets of finite group actions"};
    app.require_subcommand(0, 1);
    Invocation inv;
    app.add_flag("--pretty", inv.pretty, "indent JSON output");
    app.add_flag("--schema", inv.schema, "print the file format reference and exit");

    auto* classify_cmd = app.add_subcommand("classify", "classify the congruence modulus class");
    classify_cmd->add_option("group", inv.group_path, "group JSON file")->required();

    auto* degree_cmd =
        app.add_subcommand("degree-zero", "Sylow normalizer indices and the degree-zero solution");
    degree_cmd->add_option("group", inv.group_path, "group JSON file")->required();

    auto* complex_cmd = app.add_subcommand("complex", "complex queries");
    complex_cmd->require_subcommand(1);
    auto* fixed_cmd = complex_cmd->add_subcommand("fixed", "fixed subcomplex and components");
    fixed_cmd->add_option("complex", inv.complex_path, "complex JSON file")->required();
    fixed_cmd->add_option("--subgroup", inv.subgroup_list,
                          "element indices (default: the whole group)");
    auto* homology_cmd = complex_cmd->add_subcommand("homology", "integral or mod-p homology");
    homology_cmd->add_option("complex", inv.complex_path, "complex JSON file")->required();
    homology_cmd->add_option("--subgroup", inv.subgroup_list,
                             "restrict to the fixed subcomplex of these elements");
    homology_cmd->add_option("--mod-p", inv.mod_p, "compute Betti numbers over F_p");

    auto* rebalance_cmd = app.add_subcommand("rebalance", "cone-move rebalancing of a profile");
    rebalance_cmd->add_option("--profile", inv.profile_path, "profile JSON file")->required();
    rebalance_cmd->add_option("--modulus", inv.modulus, "congruence modulus (0 = exact)")
        ->required();

    auto* check_cmd = app.add_subcommand("check", "obstruction checks");
    check_cmd->require_subcommand(1);
    auto* smith_cmd = check_cmd->add_subcommand("smith", "mod-p fixed-set comparison");
    smith_cmd->add_option("--x", inv.x_path, "candidate complex JSON")->required();
    smith_cmd->add_option("--y", inv.y_path, "reference complex JSON")->required();
    auto* verdict_cmd = check_cmd->add_subcommand("verdict", "combined obstruction verdict");
    verdict_cmd->add_option("--deficits", inv.deficits_path, "deficit vector JSON")->required();
    verdict_cmd->add_option("--group", inv.group_path,
                            "acting group JSON (classified for the modulus)");
    verdict_cmd->add_option("--n-g", inv.n_g_override, "modulus override");
    verdict_cmd->add_option("--cover", inv.cover_path, "cover model JSON");
    verdict_cmd->add_option("--extension", inv.extension_path, "extension JSON");
    verdict_cmd->add_option("--p-subgroup", inv.p_subgroup_list,
                            "normal p-subgroup of the quotient, element indices");
    auto* cyclic_cmd = check_cmd->add_subcommand("cyclic", "cyclic-quotient trace congruence");
    cyclic_cmd->add_option("--cover", inv.cover_path, "cover model JSON")->required();
    cyclic_cmd->add_option("--extension", inv.extension_path, "extension JSON");
    cyclic_cmd->add_option("--element", inv.element, "total-group element mapping to a generator")
        ->required();
    cyclic_cmd->add_option("--fixed-euler", inv.fixed_euler_path, "per-component chi JSON")
        ->required();
    auto* compwise_cmd =
        check_cmd->add_subcommand("compwise", "componentwise trace congruence over a p-subgroup");
    compwise_cmd->add_option("--cover", inv.cover_path, "cover model JSON")->required();
    compwise_cmd->add_option("--extension", inv.extension_path, "extension JSON");
    compwise_cmd->add_option("--p-subgroup", inv.p_subgroup_list, "element indices")->required();
    compwise_cmd->add_option("--fixed-euler", inv.fixed_euler_path, "per-component chi JSON")
        ->required();

    auto* trace_cmd = app.add_subcommand("trace", "trace computations");
    trace_cmd->require_subcommand(1);
    auto* rank_cmd = trace_cmd->add_subcommand("rank", "equivariant Euler rank of a cover");
    rank_cmd->add_option("--cover", inv.cover_path, "cover model JSON")->required();

    // global flags are accepted anywhere on the line
    std::vector<std::string> filtered;
    for (const auto& a : args) {
        if (a == "--pretty")
            inv.pretty = true;
        else if (a == "--schema")
            inv.schema = true;
        else
            filtered.push_back(a);
    }

    std::vector<std::string> reversed(filtered.rbegin(), filtered.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(err, json{{"error", {{"code", "Usage"}, {"message", e.what()}}}}, inv.pretty);
        return 3;
    }

    try {
        if (inv.schema) {
            emit(out, schemas_document(), inv.pretty);
            return 0;
        }
        if (app.get_subcommands().empty()) {
            out << app.help();
            return 0;
        }

        if (classify_cmd->parsed()) {
            auto g = group_from_json(load_json_file(inv.group_path));
            emit(out, classify_report(classify(g)), inv.pretty);
            return 0;
        }
        if (degree_cmd->parsed()) {
            auto g = group_from_json(load_json_file(inv.group_path));
            auto indices = sylow_normalizer_indices(g);
            std::vector<long long> plain;
            for (auto [p, m] : indices)
                plain.push_back(m);
            emit(out, degree_zero_report(indices, degree_zero_coefficients(plain)), inv.pretty);
            return 0;
        }
        if (fixed_cmd->parsed()) {
            auto x = load_complex_checked(inv.complex_path);
            auto h = subgroup_from_list(x.group(), inv.subgroup_list);
            emit(out, subcomplex_report(x, fixed_subcomplex(x, h)), inv.pretty);
            return 0;
        }
        if (homology_cmd->parsed()) {
            auto x = load_complex_checked(inv.complex_path);
            auto s = inv.subgroup_list.empty()
                         ? full_subcomplex(x)
                         : fixed_subcomplex(x, subgroup_from_list(x.group(), inv.subgroup_list));
            emit(out, homology_report(chain_complex(s), inv.mod_p), inv.pretty);
            return 0;
        }
        if (rebalance_cmd->parsed()) {
            const std::filesystem::path path(inv.profile_path);
            auto [target, values] =
                profile_from_json(load_json_file(path), path.parent_path());
            auto profile = EulerProfile::from_values(&target, values);
            try {
                auto result = rebalance_profile(profile, inv.modulus);
                emit(out, rebalance_report(target, result, inv.modulus), inv.pretty);
                return 0;
            } catch (const Error& e) {
                if (e.code() == "GlobalCongruenceFails") {
                    emit(out,
                         json{{"schema", "rebalance/1"},
                              {"error", {{"code", e.code()}, {"message", e.what()}}}},
                         inv.pretty);
                    return 1;
                }
                throw;
            }
        }
        if (smith_cmd->parsed()) {
            auto x = load_complex_checked(inv.x_path);
            auto y = load_complex_checked(inv.y_path);
            auto report = smith_conditions(x, y);
            emit(out, smith_report_json(report), inv.pretty);
            return report.pass ? 0 : 1;
        }
        if (verdict_cmd->parsed()) {
            auto deficits = deficits_from_json(load_json_file(inv.deficits_path));
            Modulus modulus = Modulus::unknown();
            if (!inv.group_path.empty()) {
                auto g = group_from_json(load_json_file(inv.group_path));
                try {
                    modulus = effective_modulus(classify(g), inv.n_g_override);
                } catch (const Error& e) {
                    // outside the classification (prime power order): the
                    // modulus must be supplied explicitly
                    if (e.code() == "PrimePowerOrder" && inv.n_g_override)
                        modulus = Modulus::known(*inv.n_g_override);
                    else
                        throw;
                }
            } else if (inv.n_g_override) {
                modulus = Modulus::known(*inv.n_g_override);
            } else {
                fail("Usage", "check verdict needs --group or --n-g");
            }

            std::optional<ExtensionData> ext;
            if (!inv.extension_path.empty())
                ext = extension_from_json(load_json_file(inv.extension_path));
            std::optional<CoverModel> cover;
            if (!inv.cover_path.empty())
                cover = cover_from_json(load_json_file(inv.cover_path), ext);

            VerdictContext ctx;
            std::optional<Subgroup> p_sub;
            if (cover) {
                ctx.cover = &*cover;
                if (!inv.p_subgroup_list.empty())
                    p_sub = Subgroup(cover->extension().quotient,
                                     parse_index_list(inv.p_subgroup_list));
                ctx.p_subgroup = p_sub;
            }
            auto v = verdict(deficits, modulus, cover ? &ctx : nullptr);
            emit(out, verdict_report(v, deficits, modulus), inv.pretty);
            return exit_code(v.conclusion);
        }
        if (cyclic_cmd->parsed()) {
            std::optional<ExtensionData> ext;
            if (!inv.extension_path.empty())
                ext = extension_from_json(load_json_file(inv.extension_path));
            auto cover = cover_from_json(load_json_file(inv.cover_path), ext);
            auto fixed = fixed_euler_from_json(load_json_file(inv.fixed_euler_path));
            auto res = cyclic_trace_check(cover.extension(), inv.element, cover, fixed);
            emit(out, cyclic_report(res), inv.pretty);
            return res.pass && res.cross_check_pass ? 0 : 1;
        }
        if (compwise_cmd->parsed()) {
            std::optional<ExtensionData> ext;
            if (!inv.extension_path.empty())
                ext = extension_from_json(load_json_file(inv.extension_path));
            auto cover = cover_from_json(load_json_file(inv.cover_path), ext);
            auto fixed = fixed_euler_from_json(load_json_file(inv.fixed_euler_path));
            Subgroup p(cover.extension().quotient, parse_index_list(inv.p_subgroup_list));
            auto res = compwise_trace_check(cover.extension(), p, cover, fixed);
            emit(out, compwise_report(res), inv.pretty);
            return res.pass ? 0 : 1;
        }
        if (rank_cmd->parsed()) {
            auto cover = cover_from_json(load_json_file(inv.cover_path));
            emit(out, rank_report(equivariant_euler_rank(cover.cover())), inv.pretty);
            return 0;
        }
        out << app.help();
        return 0;
    } catch (const Error& e) {
        emit(err, json{{"error", {{"code", e.code()}, {"message", e.what()}, {"data", e.data()}}}},
             inv.pretty);
        return 3;
    } catch (const std::exception& e) {
        emit(err, json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}, inv.pretty);
        return 3;
    }
}

}  // namespace eqfix
