#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "eqfix/euler.hpp"
#include "eqfix/gcw.hpp"
#include "eqfix/group.hpp"
#include "eqfix/oliver.hpp"
#include "eqfix/pseudo.hpp"
#include "eqfix/splittings.hpp"
#include "eqfix/trace.hpp"

namespace eqfix {

// File formats.
//   group:     {"kind":"table","mul":[[...]]}
//              {"kind":"perm","degree":n,"generators":[[...],...]}
//   complex:   {"group": <group?>, "cells":[{"id":..,"dim":..},...],
//               "boundary":{"<id>":[[face,coeff],...]},
//               "action":{"<element>":[[id,image,sign],...]}}
//   cover:     complex fields with group = total group, plus
//              "free_kernel":[element indices]
//   extension: {"gamma":<group>,"pi":[indices],
//               "onto_g":{"g":<group>,"map":[per-element image]}}
//   profile:   {"complex": <path or inline complex>, "values":{"<id>":int}}
//   deficits:  {"components":[ids],"entries":[ints]}
//   fixed euler: {"components":[ids],"chi":[ints]}

GroupPtr group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

GCWComplex complex_from_json(const nlohmann::json& j);

ExtensionData extension_from_json(const nlohmann::json& j);

/// Cover file; when an extension is supplied it overrides the implied
/// quotient labeling.
CoverModel cover_from_json(const nlohmann::json& j, std::optional<ExtensionData> ext = {});

/// The profile's "complex" member may be a path (resolved against base_dir)
/// or an inline complex object. Returns the complex by value together with
/// the cell values.
std::pair<GCWComplex, std::map<int, long long>> profile_from_json(
    const nlohmann::json& j, const std::filesystem::path& base_dir);

DeficitVector deficits_from_json(const nlohmann::json& j);
std::map<int, long long> fixed_euler_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);

// report builders
nlohmann::json classify_report(const OliverClass& c);
nlohmann::json degree_zero_report(const std::vector<std::pair<long long, long long>>& indices,
                                  const std::vector<long long>& coefficients);
nlohmann::json validation_report_json(const ValidationReport& r);
nlohmann::json subcomplex_report(const GCWComplex& x, const Subcomplex& s);
nlohmann::json homology_report(const ChainComplex& c, std::optional<long long> mod_p);
nlohmann::json rebalance_report(const GCWComplex& target, const RebalanceResult& r,
                                long long modulus);
nlohmann::json smith_report_json(const SmithReport& r);
nlohmann::json rank_report(const ConjClassVector& v);
nlohmann::json cyclic_report(const CyclicCheckResult& r);
nlohmann::json compwise_report(const CompwiseCheckResult& r);
nlohmann::json verdict_report(const ObstructionVerdict& v, const DeficitVector& deficits,
                              const Modulus& modulus);
std::string rational_string(const Rational& r);

}  // namespace eqfix
