#pragma once

#include <utility>
#include <vector>

#include "eqfix/chain.hpp"
#include "eqfix/gcw.hpp"
#include "eqfix/splittings.hpp"

namespace eqfix {

/// Exact rational coefficients indexed by the conjugacy classes of a group
/// (classes in canonical order: by smallest member).
struct ConjClassVector {
    GroupPtr group;
    std::vector<std::vector<int>> classes;
    std::vector<Rational> coefficients;

    bool same_shape(const ConjClassVector& other) const;
    bool is_zero() const;
};

ConjClassVector zero_class_vector(const GroupPtr& g);

/// Rank of the permutation module on the cosets of H: coefficient of a
/// class is |H meet class| / |H|.
ConjClassVector rank_of_orbit_module(const GroupPtr& g, const Subgroup& h);

/// Alternating sum over cell orbits of the orbit-module ranks.
ConjClassVector equivariant_euler_rank(const GCWComplex& x);

struct RankComparison {
    bool equal = false;
    ConjClassVector difference;  // x minus y
};

/// Entry-wise comparison; a nonzero difference rules out a rational
/// equivalence between the models.
RankComparison check_rank_equality(const GCWComplex& x, const GCWComplex& y);

/// Summed Euler-characteristic identity over the components whose splitting
/// class contains the cyclic subgroup generated by a chosen lift of a
/// quotient generator, plus the coefficient identity that proves it.
struct CyclicCheckResult {
    bool pass = false;
    int gamma = 0;
    std::vector<int> grouped_components;
    long long sum_chi_f = 0;
    long long sum_chi_c = 0;
    Rational rank_coefficient;      // coefficient of the class of gamma
    Rational expected_coefficient;  // (1/|G|) * sum chi(C)
    bool cross_check_pass = false;
};

CyclicCheckResult cyclic_trace_check(const ExtensionData& e, int gamma, const CoverModel& m,
                                       const std::map<int, long long>& fixed_euler);

struct CompwiseGroupResult {
    int d_component_id = 0;
    int pair_class_id = 0;
    std::vector<int> c_components;
    long long sum_chi_f = 0;
    long long sum_chi_c = 0;
    bool pass = false;
};

struct CompwiseCheckResult {
    bool pass = false;
    std::vector<CompwiseGroupResult> groups;
};

/// Per component D of the P-fixed base and per pair class among the
/// components C inside D, the integer identity sum chi(F_C) = sum chi(C).
CompwiseCheckResult compwise_trace_check(const ExtensionData& e, const Subgroup& p_in_g,
                                           const CoverModel& m,
                                           const std::map<int, long long>& fixed_euler);

}  // namespace eqfix
