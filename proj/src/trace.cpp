#include "eqfix/trace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "eqfix/error.hpp"

namespace eqfix {

bool ConjClassVector::same_shape(const ConjClassVector& other) const
{
    return group->same_table(*other.group) && classes == other.classes;
}

bool ConjClassVector::is_zero() const
{
    for (const auto& c : coefficients)
        if (c != 0)
            return false;
    return true;
}

ConjClassVector zero_class_vector(const GroupPtr& g)
{
    ConjClassVector v;
    v.group = g;
    v.classes = conjugacy_classes(*g);
    v.coefficients.assign(v.classes.size(), Rational(0));
    return v;
}

ConjClassVector rank_of_orbit_module(const GroupPtr& g, const Subgroup& h)
{
    auto v = zero_class_vector(g);
    for (size_t i = 0; i < v.classes.size(); ++i) {
        long long hits = 0;
        for (int x : h.elements())
            if (std::binary_search(v.classes[i].begin(), v.classes[i].end(), x))
                ++hits;
        v.coefficients[i] = Rational(hits, h.size());
    }
    return v;
}

ConjClassVector equivariant_euler_rank(const GCWComplex& x)
{
    auto total = zero_class_vector(x.group());
    for (const auto& orbit : cell_orbits(x)) {
        const auto stab = cell_stabilizer(x, orbit.front());
        auto rank = rank_of_orbit_module(x.group(), stab);
        const int sign = x.dim(orbit.front()) % 2 == 0 ? 1 : -1;
        for (size_t i = 0; i < total.coefficients.size(); ++i)
            total.coefficients[i] += sign * rank.coefficients[i];
    }
    return total;
}

RankComparison check_rank_equality(const GCWComplex& x, const GCWComplex& y)
{
    if (!x.group()->same_table(*y.group()))
        fail("InconsistentContext", "rank comparison needs one common group");
    auto rx = equivariant_euler_rank(x);
    auto ry = equivariant_euler_rank(y);
    RankComparison out;
    out.difference = rx;
    for (size_t i = 0; i < rx.coefficients.size(); ++i)
        out.difference.coefficients[i] = rx.coefficients[i] - ry.coefficients[i];
    out.equal = out.difference.is_zero();
    return out;
}

namespace {

std::map<int, long long> component_chis(const CoverModel& m)
{
    auto fixed = fixed_subcomplex(m.base(), Subgroup::whole(m.extension().quotient));
    std::map<int, long long> out;
    for (const auto& c : components(fixed))
        out[m.base().cell_id(c.positions().front())] = euler_characteristic(c);
    return out;
}

long long lookup_chi_f(const std::map<int, long long>& fixed_euler, int component_id)
{
    auto it = fixed_euler.find(component_id);
    if (it == fixed_euler.end())
        fail("ComponentMismatch",
             "no candidate Euler characteristic for component " + std::to_string(component_id),
             {component_id});
    return it->second;
}

void check_component_ids(const std::map<int, long long>& fixed_euler,
                         const std::map<int, long long>& chis)
{
    for (const auto& [id, v] : fixed_euler)
        if (!chis.count(id))
            fail("ComponentMismatch", "candidate names unknown component " + std::to_string(id),
                 {id});
}

}  // namespace

CyclicCheckResult cyclic_trace_check(const ExtensionData& e, int gamma, const CoverModel& m,
                                       const std::map<int, long long>& fixed_euler)
{
    if (!e.total->same_table(*m.cover().group()) ||
        e.kernel.elements() != m.kernel().elements())
        fail("InconsistentContext", "extension and cover describe different kernels");
    if (!is_cyclic(*e.quotient))
        fail("GeneratorConditionFails", "the quotient group is not cyclic");
    if (gamma < 0 || gamma >= e.total->order())
        fail("InvalidInput", "element index out of range", {gamma});
    const int n = e.quotient->order();
    if (e.quotient->element_order(e.projection(gamma)) != n)
        fail("GeneratorConditionFails",
             "the chosen element does not map to a generator of the quotient");

    CyclicCheckResult res;
    res.gamma = gamma;

    auto classes = splitting_classes(e);
    Subgroup gen = Subgroup::generated(e.total, {gamma});
    const int gamma_class = class_of_subgroup(classes, gen);  // -1 if not a complement

    auto assignments = component_splittings(m);
    auto chis = component_chis(m);
    check_component_ids(fixed_euler, chis);

    res.sum_chi_f = 0;
    res.sum_chi_c = 0;
    for (const auto& a : assignments) {
        if (gamma_class < 0 || a.class_id != gamma_class)
            continue;
        res.grouped_components.push_back(a.component_id);
        res.sum_chi_f += lookup_chi_f(fixed_euler, a.component_id);
        res.sum_chi_c += a.chi;
    }
    res.pass = res.sum_chi_f == res.sum_chi_c;

    // Coefficient identity behind the statement: the class of gamma in the
    // equivariant Euler rank of the cover carries (1/n) * sum chi(C).
    auto rank = equivariant_euler_rank(m.cover());
    res.rank_coefficient = 0;
    for (size_t i = 0; i < rank.classes.size(); ++i)
        if (std::binary_search(rank.classes[i].begin(), rank.classes[i].end(), gamma))
            res.rank_coefficient = rank.coefficients[i];
    res.expected_coefficient = Rational(res.sum_chi_c, n);
    res.cross_check_pass = res.rank_coefficient == res.expected_coefficient;
    return res;
}

CompwiseCheckResult compwise_trace_check(const ExtensionData& e, const Subgroup& p_in_g,
                                           const CoverModel& m,
                                           const std::map<int, long long>& fixed_euler)
{
    if (!e.total->same_table(*m.cover().group()) ||
        e.kernel.elements() != m.kernel().elements())
        fail("InconsistentContext", "extension and cover describe different kernels");
    if (!p_in_g.parent()->same_table(*e.quotient))
        fail("InconsistentContext", "subgroup lives in a different quotient group");
    if (!p_in_g.is_normal_in_parent())
        fail("HypothesisFails", "P must be normal in the quotient group");
    auto status = prime_power_status(p_in_g.size());
    if (status.kind == PrimePowerKind::Composite)
        fail("HypothesisFails", "P must have prime power (or trivial) order");
    {
        auto [q, proj] = quotient(e.quotient, p_in_g);
        if (!is_cyclic(*q))
            fail("HypothesisFails", "the quotient by P must be cyclic");
        if (status.kind == PrimePowerKind::PrimePower && q->order() % status.prime == 0)
            fail("HypothesisFails", "the quotient order must be coprime to the prime of P");
    }

    auto chis = component_chis(m);
    check_component_ids(fixed_euler, chis);
    auto pairs = pair_splitting_classes(m, p_in_g);

    std::map<std::pair<int, int>, CompwiseGroupResult> grouped;
    for (const auto& p : pairs) {
        auto& slot = grouped[{p.d_component_id, p.pair_class_id}];
        slot.d_component_id = p.d_component_id;
        slot.pair_class_id = p.pair_class_id;
        slot.c_components.push_back(p.c_component_id);
        slot.sum_chi_f += lookup_chi_f(fixed_euler, p.c_component_id);
        slot.sum_chi_c += p.chi_c;
    }

    CompwiseCheckResult res;
    res.pass = true;
    for (auto& [key, g] : grouped) {
        g.pass = g.sum_chi_f == g.sum_chi_c;
        res.pass = res.pass && g.pass;
        res.groups.push_back(std::move(g));
    }
    return res;
}

}  // namespace eqfix
