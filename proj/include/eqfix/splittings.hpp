#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eqfix/gcw.hpp"
#include "eqfix/group.hpp"

namespace eqfix {

/// Group extension 1 -> kernel -> total -> quotient -> 1, carried by the
/// projection map (surjective, with the kernel as its kernel).
struct ExtensionData {
    GroupPtr total;
    Subgroup kernel;
    GroupPtr quotient;
    GroupHom projection;  // total -> quotient
};

ExtensionData make_extension(GroupPtr total, const std::vector<int>& kernel_elements,
                             GroupPtr quotient, std::vector<int> projection_table);

/// Extension with the quotient computed from the kernel.
ExtensionData quotient_extension(GroupPtr total, const std::vector<int>& kernel_elements);

/// A kernel-conjugacy class of complements of the kernel.
struct SplittingClass {
    int id = 0;
    std::vector<Subgroup> representatives;  // the whole conjugation orbit, sorted
};

/// All complements of the kernel, partitioned into orbits under conjugation
/// by kernel elements only. Classes are ordered by smallest representative;
/// an empty list means no splitting exists.
std::vector<SplittingClass> splitting_classes(const ExtensionData& e, int enumeration_cap = 400);

/// Finds the class whose orbit contains the subgroup; -1 if none.
int class_of_subgroup(const std::vector<SplittingClass>& classes, const Subgroup& s);

/// Finite regular cover: a complex with an action by the total group whose
/// kernel acts freely on cells, together with the induced quotient-group
/// action on the orbit complex.
class CoverModel {
public:
    CoverModel(GCWComplex cover, const std::vector<int>& kernel_elements,
               std::optional<ExtensionData> extension = std::nullopt);

    const GCWComplex& cover() const { return cover_; }
    const GCWComplex& base() const { return base_; }
    const Subgroup& kernel() const { return kernel_; }
    const ExtensionData& extension() const { return ext_; }

    /// Positions in the cover lying over a base cell.
    std::vector<int> fiber(int base_pos) const;

private:
    GCWComplex cover_;
    Subgroup kernel_;
    ExtensionData ext_;
    GCWComplex base_;
};

/// Per component of the fixed set of the base, the splitting class read off
/// a lift.
struct ComponentAssignment {
    int component_id = 0;  // smallest cell id in the component
    long long chi = 0;     // Euler characteristic of the component
    int class_id = 0;
    Subgroup stabilizer;   // total-group stabilizer of the chosen lift
};

/// Stabilizer of a connected piece of the cover, verified constant across
/// its cells; throws Error("InconsistentStabilizer") otherwise.
Subgroup lift_stabilizer(const GCWComplex& cover, const std::vector<int>& lift_positions);

/// For each component C of the fixed set of the base, the connected
/// components of its preimage in the cover (each a sorted position list).
std::vector<std::vector<std::vector<int>>> fixed_preimage_components(const CoverModel& m);

std::vector<ComponentAssignment> component_splittings(const CoverModel& m);

/// True iff distinct components carry distinct splitting classes; an empty
/// fixed set counts as weakly connected.
bool is_weakly_g_connected(const std::vector<ComponentAssignment>& assignments);

/// Compatible pair of splittings for nested fixed components C of the full
/// group inside D of the subgroup P, classified under simultaneous
/// kernel-conjugation.
struct PairAssignment {
    int d_component_id = 0;
    int c_component_id = 0;
    long long chi_c = 0;
    long long chi_d = 0;
    int pair_class_id = 0;
};

std::vector<PairAssignment> pair_splitting_classes(const CoverModel& m, const Subgroup& p_in_g);

}  // namespace eqfix
