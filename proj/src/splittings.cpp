#include "eqfix/splittings.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "eqfix/error.hpp"

namespace eqfix {

ExtensionData make_extension(GroupPtr total, const std::vector<int>& kernel_elements,
                             GroupPtr quotient, std::vector<int> projection_table)
{
    Subgroup kernel(total, kernel_elements);
    if (!kernel.is_normal_in_parent())
        fail("NotNormal", "extension kernel is not normal");
    auto proj = make_hom(total, quotient, std::move(projection_table));
    std::set<int> image;
    for (int g = 0; g < total->order(); ++g) {
        image.insert(proj(g));
        if ((proj(g) == FiniteGroup::kIdentity) != kernel.contains(g))
            fail("InvalidInput", "projection kernel differs from the declared kernel", {g});
    }
    if (static_cast<int>(image.size()) != quotient->order())
        fail("InvalidInput", "projection is not surjective");
    return ExtensionData{std::move(total), std::move(kernel), std::move(quotient),
                         std::move(proj)};
}

ExtensionData quotient_extension(GroupPtr total, const std::vector<int>& kernel_elements)
{
    Subgroup kernel(total, kernel_elements);
    if (!kernel.is_normal_in_parent())
        fail("NotNormal", "extension kernel is not normal");
    auto [q, proj] = quotient(total, kernel);
    return ExtensionData{std::move(total), std::move(kernel), q, std::move(proj)};
}

std::vector<SplittingClass> splitting_classes(const ExtensionData& e, int enumeration_cap)
{
    auto comps = complements(e.total, e.kernel, enumeration_cap);
    std::sort(comps.begin(), comps.end());

    std::vector<SplittingClass> classes;
    std::set<std::vector<int>> assigned;
    for (const auto& s : comps) {
        if (assigned.count(s.elements()))
            continue;
        std::set<std::vector<int>> orbit_sets;
        for (int a : e.kernel.elements())
            orbit_sets.insert(s.conjugated(a).elements());
        SplittingClass cls;
        cls.id = static_cast<int>(classes.size());
        for (const auto& elems : orbit_sets) {
            assigned.insert(elems);
            cls.representatives.emplace_back(e.total, elems);
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

int class_of_subgroup(const std::vector<SplittingClass>& classes, const Subgroup& s)
{
    for (const auto& cls : classes)
        for (const auto& rep : cls.representatives)
            if (rep == s)
                return cls.id;
    return -1;
}

CoverModel::CoverModel(GCWComplex cover, const std::vector<int>& kernel_elements,
                       std::optional<ExtensionData> extension)
    : cover_(std::move(cover)),
      kernel_(cover_.group(), kernel_elements),
      ext_(extension ? std::move(*extension)
                     : quotient_extension(cover_.group(), kernel_elements)),
      base_(FiniteGroup::trivial(), {}, {}, {})
{
    if (!ext_.total->same_table(*cover_.group()))
        fail("InconsistentContext", "extension total group differs from the cover group");
    if (!(ext_.kernel == kernel_))
        fail("InconsistentContext", "extension kernel differs from the declared free kernel");

    auto report = validate(cover_);
    if (!report.ok())
        fail("InvalidInput", "cover complex is invalid: " + report.violations.front().rule +
                                 ": " + report.violations.front().detail);

    for (int a : kernel_.elements()) {
        if (a == FiniteGroup::kIdentity)
            continue;
        for (int p = 0; p < cover_.cell_count(); ++p)
            if (cover_.act_cell(a, p) == p)
                fail("InvalidInput", "kernel element " + std::to_string(a) +
                                         " fixes cell " + std::to_string(cover_.cell_id(p)) +
                                         "; the kernel must act freely");
    }

    // Orbit complex of the kernel action, then the induced quotient action.
    auto plain = quotient_complex(cover_, kernel_);
    std::vector<std::pair<int, int>> cells;
    std::map<int, std::vector<std::pair<int, int>>> boundary;
    for (int p = 0; p < plain.cell_count(); ++p) {
        cells.emplace_back(plain.cell_id(p), plain.dim(p));
        std::vector<std::pair<int, int>> row;
        for (const auto& [f, coeff] : plain.boundary(p))
            row.emplace_back(plain.cell_id(f), coeff);
        if (!row.empty())
            boundary[plain.cell_id(p)] = std::move(row);
    }

    // representative (smallest position) of each kernel orbit
    const int n = cover_.cell_count();
    std::vector<int> rep(n, -1), align(n, 0);
    for (int p = 0; p < n; ++p) {
        if (rep[p] != -1)
            continue;
        for (int a : kernel_.elements()) {
            const int q = cover_.act_cell(a, p);
            if (rep[q] == -1) {
                rep[q] = p;
                align[q] = cover_.act_sign(a, p);
            }
        }
    }

    // section of the projection: smallest preimage per quotient element
    std::vector<int> section(ext_.quotient->order(), -1);
    for (int g = 0; g < ext_.total->order(); ++g)
        if (section[ext_.projection(g)] < 0)
            section[ext_.projection(g)] = g;

    std::map<int, std::vector<std::array<int, 3>>> action;
    for (int q = 0; q < ext_.quotient->order(); ++q) {
        const int lift = section[q];
        std::vector<std::array<int, 3>> rows;
        for (int p = 0; p < n; ++p) {
            if (rep[p] != p)
                continue;
            const int image = cover_.act_cell(lift, p);
            const int sign = cover_.act_sign(lift, p) * align[image];
            rows.push_back({cover_.cell_id(p), cover_.cell_id(rep[image]), sign});
        }
        action[q] = std::move(rows);
    }
    base_ = GCWComplex(ext_.quotient, std::move(cells), boundary, action);

    auto base_report = validate(base_);
    if (!base_report.ok())
        fail("InvalidInput", "induced base action is invalid: " +
                                 base_report.violations.front().rule + ": " +
                                 base_report.violations.front().detail);
}

std::vector<int> CoverModel::fiber(int base_pos) const
{
    const int base_id = base_.cell_id(base_pos);
    const int rep_pos = cover_.position_of(base_id);
    std::set<int> fiber_set;
    for (int a : kernel_.elements())
        fiber_set.insert(cover_.act_cell(a, rep_pos));
    return std::vector<int>(fiber_set.begin(), fiber_set.end());
}

Subgroup lift_stabilizer(const GCWComplex& cover, const std::vector<int>& lift_positions)
{
    if (lift_positions.empty())
        fail("InvalidInput", "empty lift");
    Subgroup stab = cell_stabilizer(cover, lift_positions.front());
    for (int p : lift_positions)
        if (!(cell_stabilizer(cover, p) == stab))
            fail("InconsistentStabilizer",
                 "stabilizer varies across one connected lift component",
                 {cover.cell_id(lift_positions.front()), cover.cell_id(p)});
    return stab;
}

namespace {

// connected components of a set of cover positions, by shared faces
std::vector<std::vector<int>> split_components(const GCWComplex& x, const std::set<int>& cells)
{
    std::vector<std::vector<int>> out;
    std::set<int> todo = cells;
    while (!todo.empty()) {
        std::vector<int> comp;
        std::vector<int> stack{*todo.begin()};
        todo.erase(todo.begin());
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            comp.push_back(p);
            auto visit = [&](int q) {
                auto it = todo.find(q);
                if (it != todo.end()) {
                    todo.erase(it);
                    stack.push_back(q);
                }
            };
            for (const auto& [f, coeff] : x.boundary(p))
                visit(f);
            for (int cf : x.cofaces(p))
                visit(cf);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> fixed_preimage_components(const CoverModel& m)
{
    auto fixed = fixed_subcomplex(m.base(), Subgroup::whole(m.extension().quotient));
    auto comps = components(fixed);
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& c : comps) {
        std::set<int> preimage;
        for (int p : c.positions())
            for (int q : m.fiber(p))
                preimage.insert(q);
        out.push_back(split_components(m.cover(), preimage));
    }
    return out;
}

std::vector<ComponentAssignment> component_splittings(const CoverModel& m)
{
    const auto& ext = m.extension();
    auto classes = splitting_classes(ext);
    auto fixed = fixed_subcomplex(m.base(), Subgroup::whole(ext.quotient));
    auto comps = components(fixed);
    auto lifts = fixed_preimage_components(m);

    std::vector<ComponentAssignment> out;
    for (size_t i = 0; i < comps.size(); ++i) {
        const auto& lift = lifts[i].front();
        Subgroup stab = lift_stabilizer(m.cover(), lift);
        if (stab.size() != ext.quotient->order())
            fail("NotAComplement", "lift stabilizer has the wrong order");
        for (int x : stab.elements())
            if (x != FiniteGroup::kIdentity && ext.kernel.contains(x))
                fail("NotAComplement", "lift stabilizer meets the kernel");
        const int cls = class_of_subgroup(classes, stab);
        if (cls < 0)
            fail("NotAComplement", "lift stabilizer is not a listed complement");
        out.push_back({m.base().cell_id(comps[i].positions().front()),
                       euler_characteristic(comps[i]), cls, std::move(stab)});
    }
    return out;
}

bool is_weakly_g_connected(const std::vector<ComponentAssignment>& assignments)
{
    std::set<int> ids;
    for (const auto& a : assignments)
        if (!ids.insert(a.class_id).second)
            return false;
    return true;
}

std::vector<PairAssignment> pair_splitting_classes(const CoverModel& m, const Subgroup& p_in_g)
{
    const auto& ext = m.extension();
    if (!p_in_g.parent()->same_table(*ext.quotient))
        fail("InconsistentContext", "subgroup lives in a different quotient group");
    if (!p_in_g.is_normal_in_parent())
        fail("NotNormal", "the comparison subgroup must be normal");

    // preimage of P inside the total group
    std::vector<int> pi_elements;
    for (int g = 0; g < ext.total->order(); ++g)
        if (p_in_g.contains(ext.projection(g)))
            pi_elements.push_back(g);
    Subgroup big_pi(ext.total, pi_elements);

    auto fixed_g = fixed_subcomplex(m.base(), Subgroup::whole(ext.quotient));
    auto comps_c = components(fixed_g);
    auto lifts_c = fixed_preimage_components(m);

    auto fixed_p = fixed_subcomplex(m.base(), p_in_g);
    auto comps_d = components(fixed_p);

    struct Raw {
        int d_id;
        int c_id;
        long long chi_c;
        long long chi_d;
        std::pair<std::vector<int>, std::vector<int>> canon;
    };
    std::vector<Raw> raws;
    std::set<std::pair<std::vector<int>, std::vector<int>>> forms;

    for (size_t i = 0; i < comps_c.size(); ++i) {
        const int c_first = comps_c[i].positions().front();
        const Subcomplex* d_comp = nullptr;
        for (const auto& d : comps_d)
            if (d.contains(c_first)) {
                d_comp = &d;
                break;
            }
        if (d_comp == nullptr)
            fail("ComponentMismatch", "fixed component not contained in any P-fixed component");

        const auto& lift_c = lifts_c[i].front();
        Subgroup stab_c = lift_stabilizer(m.cover(), lift_c);

        // the P-fixed lift component containing the chosen lift of C
        std::set<int> preimage_d;
        for (int p : d_comp->positions())
            for (int q : m.fiber(p))
                preimage_d.insert(q);
        auto d_lifts = split_components(m.cover(), preimage_d);
        const std::vector<int>* lift_d = nullptr;
        for (const auto& cand : d_lifts)
            if (std::binary_search(cand.begin(), cand.end(), lift_c.front())) {
                lift_d = &cand;
                break;
            }
        if (lift_d == nullptr)
            fail("InternalError", "a fixed-component lift escaped its P-fixed preimage");

        // stabilizer within the preimage of P, constant across the lift
        auto pi_stab = [&](int pos) {
            std::vector<int> elems;
            for (int a : big_pi.elements())
                if (m.cover().act_cell(a, pos) == pos)
                    elems.push_back(a);
            return Subgroup(ext.total, std::move(elems));
        };
        Subgroup stab_d = pi_stab(lift_d->front());
        for (int p : *lift_d)
            if (!(pi_stab(p) == stab_d))
                fail("InconsistentStabilizer",
                     "P-level stabilizer varies across one lift component");

        // canonical form of the pair under simultaneous kernel conjugation
        std::pair<std::vector<int>, std::vector<int>> canon;
        bool first = true;
        for (int a : ext.kernel.elements()) {
            auto cand = std::make_pair(stab_c.conjugated(a).elements(),
                                       stab_d.conjugated(a).elements());
            if (first || cand < canon) {
                canon = std::move(cand);
                first = false;
            }
        }
        forms.insert(canon);
        raws.push_back({m.base().cell_id(d_comp->positions().front()),
                        m.base().cell_id(comps_c[i].positions().front()),
                        euler_characteristic(comps_c[i]), euler_characteristic(*d_comp),
                        std::move(canon)});
    }

    std::vector<std::pair<std::vector<int>, std::vector<int>>> ordered(forms.begin(), forms.end());
    std::vector<PairAssignment> out;
    for (const auto& r : raws) {
        const int id = static_cast<int>(
            std::lower_bound(ordered.begin(), ordered.end(), r.canon) - ordered.begin());
        out.push_back({r.d_id, r.c_id, r.chi_c, r.chi_d, id});
    }
    return out;
}

}  // namespace eqfix
