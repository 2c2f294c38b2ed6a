#include "eqfix/pseudo.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eqfix/error.hpp"

namespace eqfix {

ChainMap make_chain_map(const ChainComplex* source, const ChainComplex* target,
                        std::vector<IntMatrix> mats)
{
    const int top = std::max(source->top_degree(), target->top_degree());
    mats.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        if (mats[d].rows() == 0 && mats[d].cols() == 0)
            mats[d] = IntMatrix(target->rank(d), source->rank(d));
        if (mats[d].rows() != target->rank(d) || mats[d].cols() != source->rank(d))
            fail("InvalidInput", "chain map matrix shape mismatch at degree " + std::to_string(d));
    }
    // commute with boundaries: d_target f = f d_source
    for (int d = 1; d <= top; ++d) {
        IntMatrix lhs = (d <= target->top_degree())
                            ? (*target->boundary(d)) * mats[d]
                            : IntMatrix(target->rank(d - 1), source->rank(d));
        IntMatrix rhs = (d <= source->top_degree())
                            ? mats[d - 1] * (*source->boundary(d))
                            : IntMatrix(target->rank(d - 1), source->rank(d));
        if (!(lhs - rhs).is_zero())
            fail("InvalidInput", "chain map does not commute with the boundary at degree " +
                                     std::to_string(d));
    }
    return ChainMap{source, target, std::move(mats)};
}

ChainMap identity_chain_map(const ChainComplex* c)
{
    std::vector<IntMatrix> mats(c->top_degree() + 1);
    for (int d = 0; d <= c->top_degree(); ++d)
        mats[d] = IntMatrix::identity(c->rank(d));
    return ChainMap{c, c, std::move(mats)};
}

ChainMap compose(const ChainMap& g, const ChainMap& f)
{
    if (f.target != g.source)
        fail("InvalidInput", "chain map composition mismatch");
    const int top = std::max(f.source->top_degree(), g.target->top_degree());
    std::vector<IntMatrix> mats(top + 1);
    for (int d = 0; d <= top; ++d) {
        if (d < static_cast<int>(f.mats.size()) && d < static_cast<int>(g.mats.size()))
            mats[d] = g.mats[d] * f.mats[d];
        else
            mats[d] = IntMatrix(g.target->rank(d), f.source->rank(d));
    }
    return make_chain_map(f.source, g.target, std::move(mats));
}

ChainComplex mapping_cone(const ChainMap& f)
{
    const auto& x = *f.source;
    const auto& y = *f.target;
    const int top = std::max(x.top_degree() + 1, y.top_degree());
    std::vector<int> ranks(top + 1, 0);
    for (int d = 0; d <= top; ++d)
        ranks[d] = x.rank(d - 1) + y.rank(d);

    // cone_d = X_(d-1) + Y_d, boundary (a, b) = (-dx a, db - f a)
    std::vector<IntMatrix> boundaries(top + 1);
    boundaries[0] = IntMatrix(0, ranks[0]);
    for (int d = 1; d <= top; ++d) {
        IntMatrix m(ranks[d - 1], ranks[d]);
        const int xr = x.rank(d - 1);      // columns from X_(d-1)
        const int xr_prev = x.rank(d - 2);  // rows to X_(d-2)
        if (d - 1 >= 1 && xr_prev > 0 && xr > 0) {
            const IntMatrix& dx = *x.boundary(d - 1);
            for (int i = 0; i < xr_prev; ++i)
                for (int j = 0; j < xr; ++j)
                    m.at(i, j) = -dx.at(i, j);
        }
        if (d - 1 < static_cast<int>(f.mats.size())) {
            const IntMatrix& fm = f.mats[d - 1];
            for (int i = 0; i < y.rank(d - 1); ++i)
                for (int j = 0; j < xr; ++j)
                    m.at(xr_prev + i, j) = -fm.at(i, j);
        }
        if (d <= y.top_degree()) {
            const IntMatrix& dy = *y.boundary(d);
            for (int i = 0; i < y.rank(d - 1); ++i)
                for (int j = 0; j < y.rank(d); ++j)
                    m.at(xr_prev + i, xr + j) = dy.at(i, j);
        }
        boundaries[d] = std::move(m);
    }
    return make_chain_complex(std::move(ranks), std::move(boundaries));
}

bool is_homology_equivalence(const ChainMap& f)
{
    auto cone = mapping_cone(f);
    for (const auto& h : homology_integral(cone))
        if (h.betti != 0 || !h.torsion.empty())
            return false;
    return true;
}

ChainComplex mapping_torus(const ChainComplex& c, const ChainMap& h)
{
    if (h.source != h.target || h.source != &c)
        fail("InvalidInput", "mapping torus needs a self-map of the given complex");
    const int top = c.top_degree() + 1;
    std::vector<int> ranks(top + 1, 0);
    for (int d = 0; d <= top; ++d)
        ranks[d] = c.rank(d) + c.rank(d - 1);

    std::vector<IntMatrix> boundaries(top + 1);
    boundaries[0] = IntMatrix(0, ranks[0]);
    for (int d = 1; d <= top; ++d) {
        IntMatrix m(ranks[d - 1], ranks[d]);
        const int sign = d % 2 == 0 ? 1 : -1;
        if (d <= c.top_degree()) {
            const IntMatrix& dc = *c.boundary(d);
            for (int i = 0; i < c.rank(d - 1); ++i)
                for (int j = 0; j < c.rank(d); ++j)
                    m.at(i, j) = dc.at(i, j);
        }
        // (-1)^d (h - id) on the shifted column
        const IntMatrix& hm = h.mats[d - 1];
        for (int i = 0; i < c.rank(d - 1); ++i)
            for (int j = 0; j < c.rank(d - 1); ++j) {
                Int v = hm.at(i, j);
                if (i == j)
                    v -= 1;
                m.at(i, c.rank(d) + j) = sign * v;
            }
        if (d - 1 >= 1) {
            const IntMatrix& dc = *c.boundary(d - 1);
            for (int i = 0; i < c.rank(d - 2); ++i)
                for (int j = 0; j < c.rank(d - 1); ++j)
                    m.at(c.rank(d - 1) + i, c.rank(d) + j) = dc.at(i, j);
        }
        boundaries[d] = std::move(m);
    }
    return make_chain_complex(std::move(ranks), std::move(boundaries));
}

SmithReport smith_conditions(const GCWComplex& x, const GCWComplex& y, int enumeration_cap)
{
    if (!x.group()->same_table(*y.group()))
        fail("InconsistentContext", "Smith comparison needs one common group");
    SmithReport report;
    for (const auto& p : all_subgroups(x.group(), enumeration_cap)) {
        auto status = prime_power_status(p.size());
        if (status.kind != PrimePowerKind::PrimePower)
            continue;
        SmithEntry entry;
        entry.subgroup = p.elements();
        entry.prime = status.prime;
        Subgroup p_in_y(y.group(), p.elements());
        entry.betti_x = homology_mod_p(chain_complex(fixed_subcomplex(x, p)), status.prime);
        entry.betti_y = homology_mod_p(chain_complex(fixed_subcomplex(y, p_in_y)), status.prime);
        auto padded = [](std::vector<long long> v, size_t len) {
            v.resize(len, 0);
            return v;
        };
        const size_t len = std::max(entry.betti_x.size(), entry.betti_y.size());
        entry.pass = padded(entry.betti_x, len) == padded(entry.betti_y, len);
        report.pass = report.pass && entry.pass;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

std::vector<int> generator_lifts(const ExtensionData& e)
{
    std::vector<int> lifts;
    const int n = e.quotient->order();
    for (int g = 0; g < e.total->order(); ++g)
        if (e.quotient->element_order(e.projection(g)) == n)
            lifts.push_back(g);
    return lifts;
}

}  // namespace

ObstructionVerdict verdict(const DeficitVector& deficits, const Modulus& modulus,
                           const VerdictContext* context)
{
    ObstructionVerdict v;
    if (deficits.components.empty()) {
        // an empty fixed set admits no deficit bookkeeping; whether another
        // action can reach a nonempty fixed set is outside this pipeline
        v.conclusion = Conclusion::Indeterminate;
        v.reason = "the reference fixed set is empty; this case is outside the pipeline";
        return v;
    }
    long long sum = 0;
    for (long long d : deficits.entries)
        sum += d;

    if (modulus.is_known()) {
        v.global_congruence = modulus.divides(sum) ? TriState::Pass : TriState::Fail;
        for (long long d : deficits.entries)
            v.local_congruences.push_back(modulus.divides(d) ? TriState::Pass : TriState::Fail);
    } else {
        v.local_congruences.assign(deficits.entries.size(), TriState::Indeterminate);
    }
    v.membership = ny_membership(deficits, modulus);

    bool cyclic_quotient = false;
    std::map<int, long long> fixed_euler;
    if (context != nullptr && context->cover != nullptr) {
        const auto& m = *context->cover;
        const auto& ext = m.extension();
        if (context->extension != nullptr &&
            (!context->extension->total->same_table(*ext.total) ||
             context->extension->kernel.elements() != ext.kernel.elements() ||
             !context->extension->quotient->same_table(*ext.quotient)))
            fail("InconsistentContext", "supplied extension does not match the cover model");
        cyclic_quotient = is_cyclic(*ext.quotient);

        auto assignments = component_splittings(m);
        if (assignments.size() != deficits.components.size())
            fail("ComponentMismatch", "deficit vector does not match the model's components");
        for (size_t i = 0; i < assignments.size(); ++i) {
            if (assignments[i].component_id != deficits.components[i])
                fail("ComponentMismatch", "deficit vector does not match the model's components");
            fixed_euler[assignments[i].component_id] =
                assignments[i].chi + deficits.entries[i];
        }
        v.weakly_g_connected = is_weakly_g_connected(assignments);

        if (cyclic_quotient)
            for (int gamma : generator_lifts(ext))
                v.cyclic_checks.push_back(cyclic_trace_check(ext, gamma, m, fixed_euler));
        if (context->p_subgroup)
            v.compwise_check =
                compwise_trace_check(ext, *context->p_subgroup, m, fixed_euler);
    }

    bool trace_fail = false;
    for (const auto& c : v.cyclic_checks)
        trace_fail = trace_fail || !c.pass;
    if (v.compwise_check && !v.compwise_check->pass)
        trace_fail = true;

    // (b) a failed global congruence is a necessary failure and dominates
    if (v.global_congruence == TriState::Fail) {
        v.conclusion = Conclusion::NecessaryFail;
        v.reason = "global Euler-characteristic congruence fails";
        return v;
    }

    // (c) weakly connected model with cyclic quotient or modulus zero:
    // the componentwise condition is exact
    const bool definitive_eligible =
        v.weakly_g_connected.value_or(false) &&
        (cyclic_quotient || (modulus.is_known() && *modulus.value == 0));
    if (definitive_eligible) {
        bool all_local = true;
        const Modulus effective = modulus.is_known() ? modulus : Modulus::known(0);
        for (long long d : deficits.entries)
            all_local = all_local && effective.divides(d);
        if (all_local && !trace_fail) {
            v.conclusion = Conclusion::DefinitiveExactPass;
            v.reason = "componentwise condition holds on a weakly connected model";
        } else {
            v.conclusion = Conclusion::DefinitiveExactFail;
            v.reason = "componentwise condition fails on a weakly connected model";
        }
        return v;
    }

    // (d) trace congruences are necessary conditions
    if (trace_fail) {
        v.conclusion = Conclusion::NecessaryFail;
        v.reason = "a trace congruence fails";
        return v;
    }

    // (a) entrywise congruence suffices
    if (modulus.is_known()) {
        bool all_local = true;
        for (long long d : deficits.entries)
            all_local = all_local && modulus.divides(d);
        if (all_local) {
            v.conclusion = Conclusion::SufficientPass;
            v.reason = deficits.entries.size() == 1
                           ? "the single-component congruence is necessary and sufficient"
                           : "all local congruences hold";
            return v;
        }
    }

    v.conclusion = Conclusion::Indeterminate;
    v.reason = "the deficit lies between the two bounds of the obstruction group";
    return v;
}

int exit_code(Conclusion c)
{
    switch (c) {
    case Conclusion::SufficientPass:
    case Conclusion::DefinitiveExactPass:
        return 0;
    case Conclusion::NecessaryFail:
    case Conclusion::DefinitiveExactFail:
        return 1;
    default:
        return 2;
    }
}

}  // namespace eqfix
