#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqfix/chain.hpp"
#include "eqfix/group.hpp"

namespace eqfix {

/// Finite CW-complex with a cellular action by a finite group. Cells carry
/// user-chosen integer ids; internally everything is indexed by position.
/// The action stores, per group element, a signed permutation of cells.
/// Admissibility (a fixed cell has sign +1) is what makes fixed sets
/// subcomplexes; it is checked by validate(), not by the constructor.
class GCWComplex {
public:
    // boundary: cell id -> [(face id, incidence)], zero incidences dropped.
    // action: element -> [(id, image id, sign)]; elements may be omitted only
    // if the whole map is empty, which means the identity action throughout.
    GCWComplex(GroupPtr group,
               std::vector<std::pair<int, int>> cells,
               const std::map<int, std::vector<std::pair<int, int>>>& boundary,
               const std::map<int, std::vector<std::array<int, 3>>>& action);

    const GroupPtr& group() const { return group_; }
    int cell_count() const { return static_cast<int>(ids_.size()); }
    int cell_id(int pos) const { return ids_[pos]; }
    int position_of(int id) const;  // throws Error("UnknownCell")
    bool has_cell(int id) const;
    int dim(int pos) const { return dims_[pos]; }
    int max_dim() const;

    /// Direct faces with nonzero incidence: [(position, coefficient)].
    const std::vector<std::pair<int, int>>& boundary(int pos) const { return boundary_[pos]; }
    const std::vector<int>& cofaces(int pos) const { return cofaces_[pos]; }

    int act_cell(int element, int pos) const { return act_cell_[element][pos]; }
    int act_sign(int element, int pos) const { return act_sign_[element][pos]; }

    /// Transitive face closure of a set of positions (includes the seed).
    std::vector<int> closure(const std::vector<int>& positions) const;

private:
    GroupPtr group_;
    std::vector<int> ids_;   // ascending
    std::vector<int> dims_;
    std::vector<std::vector<std::pair<int, int>>> boundary_;
    std::vector<std::vector<int>> cofaces_;
    std::vector<std::vector<int>> act_cell_;  // element -> position -> position
    std::vector<std::vector<int>> act_sign_;
};

struct Violation {
    std::string rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks all type invariants: dimension-respecting boundary, boundary of
/// boundary zero, action a signed-permutation homomorphism commuting with
/// the boundary, and admissibility. Violations are reported, never thrown.
ValidationReport validate(const GCWComplex& x);

/// Face-closed selection of cells of a parent complex.
class Subcomplex {
public:
    Subcomplex(const GCWComplex* parent, std::vector<int> positions);

    const GCWComplex& parent() const { return *parent_; }
    const std::vector<int>& positions() const { return positions_; }
    int size() const { return static_cast<int>(positions_.size()); }
    bool contains(int pos) const;
    std::vector<int> cell_ids() const;

private:
    const GCWComplex* parent_;
    std::vector<int> positions_;  // sorted
};

Subcomplex full_subcomplex(const GCWComplex& x);
Subcomplex fixed_subcomplex(const GCWComplex& x, const Subgroup& h);

/// Connected components under shared-face adjacency, ordered by smallest
/// cell id.
std::vector<Subcomplex> components(const Subcomplex& s);

long long euler_characteristic(const Subcomplex& s);

/// Alternating count of G-orbits of cells whose stabilizer is conjugate to
/// H exactly.
long long delta_invariant(const GCWComplex& x, const Subgroup& h);

/// Combinatorial shadow of regularity: incidences are +-1 with distinct
/// faces, a 1-cell has exactly two end vertices, every boundary complex has
/// the Euler characteristic of a sphere, and boundaries of cells of
/// dimension >= 2 are connected.
bool is_regular(const GCWComplex& x);

ChainComplex chain_complex(const Subcomplex& s);

/// Orbit complex under a subgroup action; cells are orbit representatives
/// (minimal cell id), the group becomes trivial.
GCWComplex quotient_complex(const GCWComplex& x, const Subgroup& h);

Subgroup cell_stabilizer(const GCWComplex& x, int pos);

/// Orbits of cells under the full group action, each sorted, ordered by
/// smallest position.
std::vector<std::vector<int>> cell_orbits(const GCWComplex& x);

/// Standalone copy of a subcomplex (same ids, trivial group).
GCWComplex subcomplex_as_complex(const Subcomplex& s);

/// Builds the full action table from actions of generating elements.
std::map<int, std::vector<std::array<int, 3>>> action_from_generators(
    const FiniteGroup& group,
    const std::vector<std::pair<int, int>>& cells,
    const std::map<int, std::vector<std::array<int, 3>>>& generator_actions);

}  // namespace eqfix
