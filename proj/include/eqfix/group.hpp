#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace eqfix {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group given by a full multiplication table on {0, ..., order-1}.
/// Index 0 is always the identity. Instances are immutable after
/// construction and safe to share across threads.
class FiniteGroup {
public:
    static constexpr int kIdentity = 0;
    static constexpr int kDefaultOrderCap = 10080;
    // Associativity is verified by a full table scan, so direct table input
    // is capped; larger groups must come in through generators.
    static constexpr int kTableScanCap = 512;

    static GroupPtr from_multiplication_table(const std::vector<std::vector<int>>& table);
    static GroupPtr from_permutation_generators(int degree,
                                                const std::vector<std::vector<int>>& generators,
                                                int order_cap = kDefaultOrderCap);
    static GroupPtr trivial();
    static GroupPtr cyclic(int n);

    int order() const { return order_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int g) const { return inv_[g]; }
    /// g x g^-1
    int conjugate(int g, int x) const { return mul(mul(g, x), inverse(g)); }
    int element_order(int g) const;
    bool same_table(const FiniteGroup& other) const;
    const std::vector<int>& table_flat() const { return mul_; }

private:
    FiniteGroup(int order, std::vector<int> table);

    int order_;
    std::vector<int> mul_;
    std::vector<int> inv_;
};

/// Sorted set of element indices closed under the parent group operations.
class Subgroup {
public:
    Subgroup(GroupPtr parent, std::vector<int> elements);

    static Subgroup trivial(GroupPtr parent);
    static Subgroup whole(GroupPtr parent);
    static Subgroup generated(GroupPtr parent, const std::vector<int>& generators);

    const GroupPtr& parent() const { return parent_; }
    const std::vector<int>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    bool contains(int g) const;
    bool contains(const Subgroup& other) const;
    bool operator==(const Subgroup& other) const;
    bool operator<(const Subgroup& other) const;  // by (size, elements)

    Subgroup conjugated(int g) const;  // g S g^-1
    bool is_normal_in_parent() const;
    bool is_normal_in(const Subgroup& larger) const;

private:
    GroupPtr parent_;
    std::vector<int> elements_;
};

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> image_of;  // size == source->order()

    int operator()(int g) const { return image_of[g]; }
};

/// Validates the homomorphism property; throws Error("NotAHomomorphism").
GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> image_of);

/// Closure of a subset under multiplication and inverse.
std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed);

/// Every subgroup exactly once, sorted by (size, elements).
/// Layer-wise generation: joins of cyclic subgroups.
std::vector<Subgroup> all_subgroups(const GroupPtr& g, int enumeration_cap = 400);

/// Conjugation orbits; classes ordered by smallest member, each sorted.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

std::vector<Subgroup> sylow_subgroups(const GroupPtr& g, long long p, int enumeration_cap = 400);

Subgroup normalizer(const Subgroup& h);

/// Coset group of a normal subgroup together with the projection.
/// The identity coset gets index 0; the rest are ordered by minimal element.
std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n);

/// All subgroups S with |S||N| = |G| and S meeting N trivially.
std::vector<Subgroup> complements(const GroupPtr& g, const Subgroup& n, int enumeration_cap = 400);

bool is_cyclic(const Subgroup& h);
bool is_cyclic(const FiniteGroup& g);

// n = 1 is "trivial order", deliberately distinct from a prime power: the
// P <| H <| G criteria must accept degenerate P or G/H.
enum class PrimePowerKind { Trivial, PrimePower, Composite };

struct PrimePowerStatus {
    PrimePowerKind kind;
    long long prime = 0;  // set when kind == PrimePower

    bool prime_power_or_trivial() const { return kind != PrimePowerKind::Composite; }
};

PrimePowerStatus prime_power_status(long long n);
std::vector<long long> prime_factors(long long n);  // distinct, ascending

/// Subgroup re-indexed as a standalone group; to_parent maps local indices
/// back to parent element indices (local 0 is the identity).
struct SubgroupGroup {
    GroupPtr group;
    std::vector<int> to_parent;
};

SubgroupGroup subgroup_as_group(const Subgroup& h);

}  // namespace eqfix
