#include "eqfix/oliver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "eqfix/chain.hpp"
#include "eqfix/error.hpp"

namespace eqfix {

namespace {

bool quotient_is_cyclic(const GroupPtr& g, const Subgroup& n)
{
    auto [q, proj] = quotient(g, n);
    return is_cyclic(*q);
}

// H/P for P normal in H, both given inside a common parent.
bool section_is_cyclic(const Subgroup& h, const Subgroup& p)
{
    auto local = subgroup_as_group(h);
    std::vector<int> to_local(h.parent()->order(), -1);
    for (size_t i = 0; i < local.to_parent.size(); ++i)
        to_local[local.to_parent[i]] = static_cast<int>(i);
    std::vector<int> p_local;
    p_local.reserve(p.elements().size());
    for (int x : p.elements())
        p_local.push_back(to_local[x]);
    return quotient_is_cyclic(local.group, Subgroup(local.group, std::move(p_local)));
}

}  // namespace

OliverClass classify(const GroupPtr& g, int enumeration_cap)
{
    if (prime_power_status(g->order()).prime_power_or_trivial())
        fail("PrimePowerOrder", "the classification applies to groups of not prime power order");

    auto subs = all_subgroups(g, enumeration_cap);  // sorted by (size, elements)

    // n = 0: some normal P of prime-power-or-trivial order with G/P cyclic.
    for (const auto& p : subs) {
        if (!prime_power_status(p.size()).prime_power_or_trivial())
            continue;
        if (!p.is_normal_in_parent())
            continue;
        if (quotient_is_cyclic(g, p))
            return {OliverTag::Zero, p, std::nullopt};
    }

    // Chain search P <| H <| G, smallest P first, then smallest H.
    for (const auto& p : subs) {
        if (!prime_power_status(p.size()).prime_power_or_trivial())
            continue;
        for (const auto& h : subs) {
            if (!h.contains(p))
                continue;
            if (!prime_power_status(g->order() / h.size()).prime_power_or_trivial())
                continue;
            if (!h.is_normal_in_parent())
                continue;
            if (!p.is_normal_in(h))
                continue;
            if (!section_is_cyclic(h, p))
                continue;
            return {OliverTag::NontrivialUnknown, p, h};
        }
    }
    return {OliverTag::One, std::nullopt, std::nullopt};
}

std::vector<std::pair<long long, long long>> sylow_normalizer_indices(const GroupPtr& g,
                                                                      int enumeration_cap)
{
    std::vector<std::pair<long long, long long>> out;
    for (long long p : prime_factors(g->order())) {
        auto syl = sylow_subgroups(g, p, enumeration_cap);
        // Sylow subgroups are conjugate, so the index is independent of the
        // chosen one.
        const auto n = normalizer(syl.front());
        out.emplace_back(p, g->order() / n.size());
    }
    return out;
}

std::vector<long long> degree_zero_coefficients(const std::vector<long long>& indices)
{
    if (indices.empty())
        fail("IndicesNotCoprime", "empty index list");
    for (long long m : indices)
        if (m <= 0)
            fail("InvalidInput", "indices must be positive", {m});

    // Fold extended gcd left to right: after step k we have
    // g_k = sum_{i<=k} c_i * m_i. Once g hits 1 the remaining c_i stay 0.
    // The folded coefficients multiply up, so the accumulation is exact
    // big-integer arithmetic narrowed at the end.
    std::vector<Int> c(indices.size(), 0);
    Int g = indices[0];
    c[0] = 1;
    for (size_t k = 1; k < indices.size(); ++k) {
        if (g == 1)
            break;
        Int a = g, b = indices[k];
        Int x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
            const Int q = a / b;
            std::swap(a -= q * b, b);
            std::swap(x0 -= q * x1, x1);
            std::swap(y0 -= q * y1, y1);
        }
        // a = x0 * g + y0 * indices[k]
        for (size_t i = 0; i < k; ++i)
            c[i] *= x0;
        c[k] = y0;
        g = a;
    }
    if (g != 1)
        fail("IndicesNotCoprime", "gcd of indices is " + g.str() +
                                      "; the construction needs coprime indices");

    Int check = 1;
    for (size_t i = 0; i < indices.size(); ++i)
        check -= c[i] * indices[i];
    if (check != 0)
        fail("InternalError", "degree-zero substitution does not vanish");

    const Int max_ll = std::numeric_limits<long long>::max();
    std::vector<long long> a(indices.size());
    for (size_t i = 0; i < indices.size(); ++i) {
        if (abs(c[i]) > max_ll)
            fail("InvalidInput", "degree-zero coefficients exceed the integer range");
        a[i] = static_cast<long long>(-c[i].convert_to<long long>());
    }
    return a;
}

Modulus effective_modulus(const OliverClass& c, std::optional<long long> override_value)
{
    if (override_value && *override_value < 0)
        fail("InvalidInput", "modulus override must be nonnegative");
    switch (c.tag) {
    case OliverTag::Zero:
        if (override_value && *override_value != 0)
            fail("InconsistentOverride", "class is Zero but override is " +
                                             std::to_string(*override_value));
        return Modulus::known(0);
    case OliverTag::One:
        if (override_value && *override_value != 1)
            fail("InconsistentOverride", "class is One but override is " +
                                             std::to_string(*override_value));
        return Modulus::known(1);
    case OliverTag::NontrivialUnknown:
    default:
        if (override_value)
            return Modulus::known(*override_value);
        return Modulus::unknown();
    }
}

Modulus square_free_modulus(const OliverClass& c)
{
    switch (c.tag) {
    case OliverTag::Zero:
        return Modulus::known(0);
    case OliverTag::One:
        return Modulus::known(1);
    default:
        return Modulus::unknown();
    }
}

}  // namespace eqfix
