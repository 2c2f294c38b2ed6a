#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "eqfix/gcw.hpp"
#include "eqfix/oliver.hpp"

namespace eqfix {

/// Cellular map recorded by carriers: each source cell is assigned the
/// target cell whose closed cell contains its image. Face-compatibility:
/// the carrier of a face lies in the closure of the carrier.
struct CellularMap {
    const GCWComplex* source = nullptr;  // trivial action expected
    const GCWComplex* target = nullptr;
    std::map<int, int> carrier;  // source cell id -> target cell id
};

/// Per target cell, the Euler characteristic of the preimage of the closed
/// cell. Open-cell contributions are recovered by inclusion-exclusion over
/// the face poset rather than stored.
class EulerProfile {
public:
    EulerProfile(const GCWComplex* target, std::vector<long long> closed_values);
    static EulerProfile from_values(const GCWComplex* target,
                                    const std::map<int, long long>& values_by_id);

    const GCWComplex& target() const { return *target_; }
    long long closed_value(int pos) const { return closed_[pos]; }
    const std::vector<long long>& closed_values() const { return closed_; }

    /// Inclusion-exclusion inverse: per cell, the preimage Euler
    /// characteristic of the open cell.
    std::vector<long long> open_values() const;

    /// Euler characteristic of the whole source.
    long long total() const;

private:
    const GCWComplex* target_;
    std::vector<long long> closed_;  // per position
};

EulerProfile profile_from_map(const CellularMap& f);

struct CellwiseCongruenceReport {
    long long chi_source = 0;  // by inclusion-exclusion over the skeleton
    long long chi_target = 0;
    long long modulus = 0;
    bool congruent = false;
};

/// Verifies the per-cell hypothesis e(closed cell) == 1 mod n and, when it
/// holds, checks the global congruence chi(F) == chi(Y) mod n. A failed
/// hypothesis throws Error("HypothesisFails") carrying the violating cell
/// ids; n = 0 means integer equality.
CellwiseCongruenceReport check_cellwise_congruence(const EulerProfile& p, long long n);

/// a + 2b = delta_sigma, a + 3b = delta_boundary (unimodular, unique).
std::pair<long long, long long> solve_cone_system(long long delta_sigma,
                                                  long long delta_boundary);

/// Dangling 1-cell variant: increments a+2b+c / a+3b+c / c.
std::tuple<long long, long long, long long> solve_cone_system_dangling(long long delta_sigma,
                                                                       long long delta_v0,
                                                                       long long delta_v1);

/// One cone-gluing step of the rebalancing induction. The open-cell
/// increments are:
///   plain:    m[sigma] -= b; m[entry] += a+3b; m[base] -= a+2b
///   dangling: m[sigma] -= b+c; m[v0] += a+3b+c; m[v1] += c;
///             m[base] -= a+2b+c
/// (entry doubles as v0 in the dangling case; base may coincide with sigma
/// when sigma is the last top cell). Closed values then change by exactly
/// the advertised a+2b(+c) on the cell, a+3b(+c) on the boundary aggregate
/// and b on the complement.
struct ConeMove {
    int sigma;  // target cell id
    long long a = 0;
    long long b = 0;
    std::optional<long long> c;  // present in the dangling case
    int base;                    // anchor: cell absorbing the compensation
    int entry;                   // anchor: entry face (v0 when dangling)
    std::optional<int> stranded;  // v1 in the dangling case
};

struct RebalanceResult {
    std::vector<ConeMove> moves;
    std::vector<long long> final_closed_values;  // per target position
};

/// Top-cell induction over a connected regular target: peel a top cell,
/// fix its closed value and boundary aggregate with one cone move, recurse
/// into the rest. Requires the global congruence chi(F) == chi(Y) mod n;
/// the result has every closed value == 1 mod n and every move preserves
/// chi(F) exactly.
RebalanceResult rebalance_profile(const EulerProfile& p, long long n);

/// Integer tuple indexed by the components of the G-fixed set.
struct DeficitVector {
    std::vector<int> components;  // canonical ids: smallest cell id per component
    std::vector<long long> entries;

    bool operator==(const DeficitVector& other) const = default;
};

/// Entries chi(F_C) - chi(C) over components C of the G-fixed set of y.
/// fixed_chi maps component id -> chi(F_C); chi of an empty preimage is 0.
DeficitVector deficit_vector(const std::map<int, long long>& fixed_chi, const GCWComplex& y,
                             const Subgroup& g_full);

DeficitVector negate(const DeficitVector& v);
DeficitVector add(const DeficitVector& v, const DeficitVector& w);

enum class NyMembership { InLowerBound, InUpperBoundOnly, OutsideUpperBound, Indeterminate };

/// Position of a deficit vector relative to the two bounds on the
/// obstruction group: entry-wise divisibility (lower bound, sufficient)
/// versus divisibility of the entry sum (upper bound, necessary).
NyMembership ny_membership(const DeficitVector& v, const Modulus& modulus);

}  // namespace eqfix
