#include "eqfix/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "eqfix/error.hpp"

namespace eqfix {

namespace {

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b)
{
    // (a*b)(x) = a(b(x))
    std::vector<int> r(a.size());
    for (size_t x = 0; x < a.size(); ++x)
        r[x] = a[b[x]];
    return r;
}

}  // namespace

FiniteGroup::FiniteGroup(int order, std::vector<int> table)
    : order_(order), mul_(std::move(table)), inv_(order)
{
    for (int g = 0; g < order_; ++g) {
        int found = -1;
        for (int b = 0; b < order_; ++b) {
            if (mul(g, b) == kIdentity) {
                found = b;
                break;
            }
        }
        if (found < 0 || mul(found, g) != kIdentity)
            fail("NotAGroup", "element " + std::to_string(g) + " has no two-sided inverse", {g});
        inv_[g] = found;
    }
}

GroupPtr FiniteGroup::from_multiplication_table(const std::vector<std::vector<int>>& table)
{
    const int n = static_cast<int>(table.size());
    if (n == 0)
        fail("NotAGroup", "empty multiplication table");
    if (n > kTableScanCap)
        fail("OrderCapExceeded",
             "multiplication-table input capped at order " + std::to_string(kTableScanCap) +
                 "; use permutation generators for larger groups");
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            fail("NotAGroup", "multiplication table is not square");
        for (int v : row) {
            if (v < 0 || v >= n)
                fail("NotAGroup", "table entry out of range", {v});
            flat.push_back(v);
        }
    }
    auto at = [&](int a, int b) { return flat[static_cast<size_t>(a) * n + b]; };
    for (int g = 0; g < n; ++g) {
        if (at(0, g) != g || at(g, 0) != g)
            fail("NotAGroup", "index 0 is not a two-sided identity", {g});
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    fail("NotAGroup",
                         "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                             "," + std::to_string(c) + ")",
                         {a, b, c});
    return GroupPtr(new FiniteGroup(n, std::move(flat)));
}

GroupPtr FiniteGroup::from_permutation_generators(int degree,
                                                  const std::vector<std::vector<int>>& generators,
                                                  int order_cap)
{
    if (degree < 0)
        fail("NotAGroup", "negative degree");
    std::vector<int> identity(degree);
    std::iota(identity.begin(), identity.end(), 0);
    for (const auto& p : generators) {
        if (static_cast<int>(p.size()) != degree)
            fail("NotAGroup", "generator length does not match degree");
        std::vector<char> seen(degree, 0);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v])
                fail("NotAGroup", "generator is not a permutation");
            seen[v] = 1;
        }
    }

    // BFS by word length; ties broken lexicographically. Identity is index 0.
    std::vector<std::vector<int>> elements{identity};
    std::map<std::vector<int>, int> index{{identity, 0}};
    std::vector<std::vector<int>> frontier{identity};
    while (!frontier.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& w : frontier)
            for (const auto& g : generators) {
                auto wg = compose_perm(w, g);
                if (!index.count(wg))
                    next.insert(std::move(wg));
            }
        frontier.clear();
        for (const auto& p : next) {
            if (static_cast<int>(elements.size()) >= order_cap)
                fail("OrderCapExceeded",
                     "group order exceeds cap " + std::to_string(order_cap));
            index[p] = static_cast<int>(elements.size());
            elements.push_back(p);
            frontier.push_back(p);
        }
    }

    const int n = static_cast<int>(elements.size());
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[static_cast<size_t>(a) * n + b] = index.at(compose_perm(elements[a], elements[b]));
    return GroupPtr(new FiniteGroup(n, std::move(flat)));
}

GroupPtr FiniteGroup::trivial()
{
    return GroupPtr(new FiniteGroup(1, std::vector<int>{0}));
}

GroupPtr FiniteGroup::cyclic(int n)
{
    if (n <= 0)
        fail("NotAGroup", "cyclic group order must be positive");
    std::vector<int> flat(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[static_cast<size_t>(a) * n + b] = (a + b) % n;
    return GroupPtr(new FiniteGroup(n, std::move(flat)));
}

int FiniteGroup::element_order(int g) const
{
    int k = 1;
    int x = g;
    while (x != kIdentity) {
        x = mul(x, g);
        ++k;
    }
    return k;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const
{
    return order_ == other.order_ && mul_ == other.mul_;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> elements)
    : parent_(std::move(parent)), elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty() || elements_[0] != FiniteGroup::kIdentity)
        fail("NotASubgroup", "subgroup must contain the identity");
    for (int a : elements_) {
        if (a < 0 || a >= parent_->order())
            fail("NotASubgroup", "element index out of range", {a});
        if (!std::binary_search(elements_.begin(), elements_.end(), parent_->inverse(a)))
            fail("NotASubgroup", "not closed under inverse", {a});
        for (int b : elements_)
            if (!std::binary_search(elements_.begin(), elements_.end(), parent_->mul(a, b)))
                fail("NotASubgroup", "not closed under multiplication", {a, b});
    }
}

Subgroup Subgroup::trivial(GroupPtr parent)
{
    return Subgroup(std::move(parent), {FiniteGroup::kIdentity});
}

Subgroup Subgroup::whole(GroupPtr parent)
{
    std::vector<int> all(parent->order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::generated(GroupPtr parent, const std::vector<int>& generators)
{
    auto elems = subgroup_closure(*parent, generators);
    return Subgroup(std::move(parent), std::move(elems));
}

bool Subgroup::contains(int g) const
{
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::contains(const Subgroup& other) const
{
    return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(),
                         other.elements_.end());
}

bool Subgroup::operator==(const Subgroup& other) const
{
    return elements_ == other.elements_;
}

bool Subgroup::operator<(const Subgroup& other) const
{
    if (elements_.size() != other.elements_.size())
        return elements_.size() < other.elements_.size();
    return elements_ < other.elements_;
}

Subgroup Subgroup::conjugated(int g) const
{
    std::vector<int> conj;
    conj.reserve(elements_.size());
    for (int x : elements_)
        conj.push_back(parent_->conjugate(g, x));
    return Subgroup(parent_, std::move(conj));
}

bool Subgroup::is_normal_in_parent() const
{
    for (int g = 0; g < parent_->order(); ++g)
        for (int x : elements_)
            if (!contains(parent_->conjugate(g, x)))
                return false;
    return true;
}

bool Subgroup::is_normal_in(const Subgroup& larger) const
{
    for (int g : larger.elements())
        for (int x : elements_)
            if (!contains(parent_->conjugate(g, x)))
                return false;
    return true;
}

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> image_of)
{
    if (static_cast<int>(image_of.size()) != source->order())
        fail("NotAHomomorphism", "image table size does not match source order");
    for (int v : image_of)
        if (v < 0 || v >= target->order())
            fail("NotAHomomorphism", "image out of range", {v});
    if (image_of[FiniteGroup::kIdentity] != FiniteGroup::kIdentity)
        fail("NotAHomomorphism", "identity must map to identity");
    for (int a = 0; a < source->order(); ++a)
        for (int b = 0; b < source->order(); ++b)
            if (image_of[source->mul(a, b)] != target->mul(image_of[a], image_of[b]))
                fail("NotAHomomorphism", "multiplication not respected", {a, b});
    return GroupHom{std::move(source), std::move(target), std::move(image_of)};
}

std::vector<int> subgroup_closure(const FiniteGroup& g, std::vector<int> seed)
{
    std::set<int> got{FiniteGroup::kIdentity};
    std::vector<int> queue{FiniteGroup::kIdentity};
    for (int s : seed) {
        if (s < 0 || s >= g.order())
            fail("NotASubgroup", "generator index out of range", {s});
        if (got.insert(s).second)
            queue.push_back(s);
    }
    for (size_t i = 0; i < queue.size(); ++i) {
        const int a = queue[i];
        if (got.insert(g.inverse(a)).second)
            queue.push_back(g.inverse(a));
        for (size_t j = 0; j <= i; ++j) {
            for (int p : {g.mul(a, queue[j]), g.mul(queue[j], a)})
                if (got.insert(p).second)
                    queue.push_back(p);
        }
    }
    return std::vector<int>(got.begin(), got.end());
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, int enumeration_cap)
{
    if (g->order() > enumeration_cap)
        fail("OrderCapExceeded", "subgroup enumeration capped at order " +
                                     std::to_string(enumeration_cap));

    // Atoms: cyclic subgroups. Every subgroup is a join of those, so
    // repeatedly extending known subgroups by atoms enumerates the lattice.
    std::set<std::vector<int>> cyclic_sets;
    for (int x = 0; x < g->order(); ++x)
        cyclic_sets.insert(subgroup_closure(*g, {x}));

    std::set<std::vector<int>> known(cyclic_sets.begin(), cyclic_sets.end());
    std::vector<std::vector<int>> work(known.begin(), known.end());
    while (!work.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : work)
            for (const auto& c : cyclic_sets) {
                if (std::includes(s.begin(), s.end(), c.begin(), c.end()))
                    continue;
                std::vector<int> seed = s;
                seed.insert(seed.end(), c.begin(), c.end());
                auto joined = subgroup_closure(*g, std::move(seed));
                if (known.insert(joined).second)
                    next.push_back(std::move(joined));
            }
        work = std::move(next);
    }

    std::vector<Subgroup> result;
    result.reserve(known.size());
    for (const auto& s : known)
        result.emplace_back(g, s);
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g)
{
    std::vector<char> seen(g.order(), 0);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x])
            continue;
        std::set<int> cls;
        for (int a = 0; a < g.order(); ++a)
            cls.insert(g.conjugate(a, x));
        std::vector<int> v(cls.begin(), cls.end());
        for (int y : v)
            seen[y] = 1;
        classes.push_back(std::move(v));
    }
    return classes;  // ordered by smallest member since x scans upward
}

std::vector<Subgroup> sylow_subgroups(const GroupPtr& g, long long p, int enumeration_cap)
{
    if (p < 2 || g->order() % p != 0)
        fail("PrimeDoesNotDivideOrder",
             "prime " + std::to_string(p) + " does not divide group order");
    long long part = 1;
    long long rest = g->order();
    while (rest % p == 0) {
        rest /= p;
        part *= p;
    }
    std::vector<Subgroup> result;
    for (auto& s : all_subgroups(g, enumeration_cap))
        if (s.size() == part)
            result.push_back(std::move(s));
    return result;
}

Subgroup normalizer(const Subgroup& h)
{
    const auto& g = *h.parent();
    std::vector<int> elems;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int a : h.elements())
            if (!h.contains(g.conjugate(x, a))) {
                ok = false;
                break;
            }
        if (ok)
            elems.push_back(x);
    }
    return Subgroup(h.parent(), std::move(elems));
}

std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g, const Subgroup& n)
{
    if (!n.is_normal_in_parent())
        fail("NotNormal", "kernel subgroup is not normal");

    // Coset labels: minimal member. The identity coset is automatically
    // first after sorting, giving it quotient index 0.
    std::vector<int> coset_min(g->order());
    for (int x = 0; x < g->order(); ++x) {
        int m = x;
        for (int a : n.elements())
            m = std::min(m, g->mul(x, a));
        coset_min[x] = m;
    }
    std::vector<int> reps;
    for (int x = 0; x < g->order(); ++x)
        if (coset_min[x] == x)
            reps.push_back(x);
    std::vector<int> rep_index(g->order(), -1);
    for (size_t i = 0; i < reps.size(); ++i)
        rep_index[reps[i]] = static_cast<int>(i);

    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            table[i][j] = rep_index[coset_min[g->mul(reps[i], reps[j])]];
    auto qg = FiniteGroup::from_multiplication_table(table);

    std::vector<int> image(g->order());
    for (int x = 0; x < g->order(); ++x)
        image[x] = rep_index[coset_min[x]];
    auto hom = make_hom(g, qg, std::move(image));
    return {qg, std::move(hom)};
}

std::vector<Subgroup> complements(const GroupPtr& g, const Subgroup& n, int enumeration_cap)
{
    if (!n.is_normal_in_parent())
        fail("NotNormal", "subgroup is not normal");
    if (g->order() % n.size() != 0)
        fail("NotASubgroup", "subgroup size does not divide group order");
    const int want = g->order() / n.size();
    std::vector<Subgroup> result;
    for (auto& s : all_subgroups(g, enumeration_cap)) {
        if (s.size() != want)
            continue;
        bool trivial_meet = true;
        for (int x : s.elements())
            if (x != FiniteGroup::kIdentity && n.contains(x)) {
                trivial_meet = false;
                break;
            }
        if (trivial_meet)
            result.push_back(std::move(s));
    }
    return result;
}

bool is_cyclic(const Subgroup& h)
{
    for (int x : h.elements())
        if (h.parent()->element_order(x) == h.size())
            return true;
    return false;
}

bool is_cyclic(const FiniteGroup& g)
{
    for (int x = 0; x < g.order(); ++x)
        if (g.element_order(x) == g.order())
            return true;
    return false;
}

PrimePowerStatus prime_power_status(long long n)
{
    if (n <= 0)
        fail("InvalidInput", "prime_power_status requires a positive integer");
    if (n == 1)
        return {PrimePowerKind::Trivial, 0};
    auto primes = prime_factors(n);
    if (primes.size() == 1)
        return {PrimePowerKind::PrimePower, primes[0]};
    return {PrimePowerKind::Composite, 0};
}

std::vector<long long> prime_factors(long long n)
{
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

SubgroupGroup subgroup_as_group(const Subgroup& h)
{
    const auto& parent = *h.parent();
    const auto& elems = h.elements();  // sorted, identity first
    std::vector<int> local(parent.order(), -1);
    for (size_t i = 0; i < elems.size(); ++i)
        local[elems[i]] = static_cast<int>(i);
    const int n = h.size();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[i][j] = local[parent.mul(elems[i], elems[j])];
    return {FiniteGroup::from_multiplication_table(table), elems};
}

}  // namespace eqfix
