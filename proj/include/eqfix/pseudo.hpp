#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqfix/chain.hpp"
#include "eqfix/euler.hpp"
#include "eqfix/gcw.hpp"
#include "eqfix/splittings.hpp"
#include "eqfix/trace.hpp"

namespace eqfix {

/// Degree-wise matrices commuting with the boundaries.
struct ChainMap {
    const ChainComplex* source = nullptr;
    const ChainComplex* target = nullptr;
    std::vector<IntMatrix> mats;  // mats[d]: target rank(d) x source rank(d)
};

ChainMap make_chain_map(const ChainComplex* source, const ChainComplex* target,
                        std::vector<IntMatrix> mats);
ChainMap identity_chain_map(const ChainComplex* c);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f

/// Algebraic mapping cone; acyclic iff the map is a homology isomorphism.
ChainComplex mapping_cone(const ChainMap& f);

bool is_homology_equivalence(const ChainMap& f);

/// Two-column mapping torus of a self-map: degree d is C_d + C_{d-1} with
/// boundary (x, y) -> (dx + (-1)^d (h - id) y, dy). Always has chi = 0 and
/// the Wang property.
ChainComplex mapping_torus(const ChainComplex& c, const ChainMap& h);

struct SmithEntry {
    std::vector<int> subgroup;
    long long prime = 0;
    std::vector<long long> betti_x;
    std::vector<long long> betti_y;
    bool pass = false;
};

struct SmithReport {
    std::vector<SmithEntry> entries;
    bool pass = true;
};

/// Mod-p Betti comparison of the P-fixed sets over every subgroup of prime
/// power order; a mismatch rules out pseudo-equivalence.
SmithReport smith_conditions(const GCWComplex& x, const GCWComplex& y, int enumeration_cap = 400);

enum class TriState { Pass, Fail, Indeterminate };

enum class Conclusion {
    SufficientPass,
    NecessaryFail,
    DefinitiveExactPass,
    DefinitiveExactFail,
    Indeterminate,
};

struct VerdictContext {
    const ExtensionData* extension = nullptr;
    const CoverModel* cover = nullptr;
    std::optional<Subgroup> p_subgroup;  // in the quotient group
};

struct ObstructionVerdict {
    TriState global_congruence = TriState::Indeterminate;
    std::vector<TriState> local_congruences;
    NyMembership membership = NyMembership::Indeterminate;
    std::optional<bool> weakly_g_connected;
    std::vector<CyclicCheckResult> cyclic_checks;
    std::optional<CompwiseCheckResult> compwise_check;
    Conclusion conclusion = Conclusion::Indeterminate;
    std::string reason;
};

/// Combined decision table over the congruence layers and the trace
/// congruences; a necessary failure always dominates, and the definitive
/// layer applies to weakly connected models with cyclic quotient or
/// modulus zero.
ObstructionVerdict verdict(const DeficitVector& deficits, const Modulus& modulus,
                           const VerdictContext* context);

/// 0 pass, 1 fail, 2 indeterminate (input errors exit >= 3).
int exit_code(Conclusion c);

}  // namespace eqfix
