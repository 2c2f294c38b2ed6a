#include "eqfix/euler.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "eqfix/error.hpp"

namespace eqfix {

namespace {

long long reduce_mod(long long x, long long n)
{
    if (n == 0)
        return x;
    return ((x % n) + n) % n;
}

long long sign_of_dim(int d)
{
    return d % 2 == 0 ? 1 : -1;
}

}  // namespace

EulerProfile::EulerProfile(const GCWComplex* target, std::vector<long long> closed_values)
    : target_(target), closed_(std::move(closed_values))
{
    if (static_cast<int>(closed_.size()) != target_->cell_count())
        fail("InvalidInput", "profile needs one value per target cell");
}

EulerProfile EulerProfile::from_values(const GCWComplex* target,
                                       const std::map<int, long long>& values_by_id)
{
    std::vector<long long> closed(target->cell_count(), 0);
    std::vector<char> seen(target->cell_count(), 0);
    for (const auto& [id, v] : values_by_id) {
        const int pos = target->position_of(id);
        closed[pos] = v;
        seen[pos] = 1;
    }
    for (int p = 0; p < target->cell_count(); ++p)
        if (!seen[p])
            fail("InvalidInput",
                 "profile is missing cell " + std::to_string(target->cell_id(p)),
                 {target->cell_id(p)});
    return EulerProfile(target, std::move(closed));
}

std::vector<long long> EulerProfile::open_values() const
{
    const auto& y = *target_;
    std::vector<int> order(y.cell_count());
    for (int p = 0; p < y.cell_count(); ++p)
        order[p] = p;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return y.dim(a) < y.dim(b); });
    std::vector<long long> open(y.cell_count(), 0);
    for (int p : order) {
        long long faces = 0;
        for (int q : y.closure({p}))
            if (q != p)
                faces += open[q];
        open[p] = closed_[p] - faces;
    }
    return open;
}

long long EulerProfile::total() const
{
    long long t = 0;
    for (long long v : open_values())
        t += v;
    return t;
}

EulerProfile profile_from_map(const CellularMap& f)
{
    const auto& src = *f.source;
    const auto& tgt = *f.target;

    std::vector<int> carrier_pos(src.cell_count(), -1);
    for (const auto& [sid, tid] : f.carrier)
        carrier_pos[src.position_of(sid)] = tgt.position_of(tid);
    for (int p = 0; p < src.cell_count(); ++p)
        if (carrier_pos[p] < 0)
            fail("CarrierNotFaceCompatible",
                 "source cell " + std::to_string(src.cell_id(p)) + " has no carrier",
                 {src.cell_id(p)});

    // face-compatibility: carrier of a face lies in the carrier's closure
    for (int p = 0; p < src.cell_count(); ++p) {
        auto closure = tgt.closure({carrier_pos[p]});
        for (const auto& [face, coeff] : src.boundary(p))
            if (!std::binary_search(closure.begin(), closure.end(), carrier_pos[face]))
                fail("CarrierNotFaceCompatible",
                     "carrier of a face of source cell " + std::to_string(src.cell_id(p)) +
                         " is not a face of its carrier",
                     {src.cell_id(p), src.cell_id(face)});
    }

    std::vector<long long> closed(tgt.cell_count(), 0);
    for (int t = 0; t < tgt.cell_count(); ++t) {
        auto closure = tgt.closure({t});
        for (int p = 0; p < src.cell_count(); ++p)
            if (std::binary_search(closure.begin(), closure.end(), carrier_pos[p]))
                closed[t] += sign_of_dim(src.dim(p));
    }
    return EulerProfile(f.target, std::move(closed));
}

CellwiseCongruenceReport check_cellwise_congruence(const EulerProfile& p, long long n)
{
    const auto& y = p.target();
    std::vector<long long> violations;
    for (int pos = 0; pos < y.cell_count(); ++pos)
        if (reduce_mod(p.closed_value(pos) - 1, n) != 0)
            violations.push_back(y.cell_id(pos));
    if (!violations.empty())
        fail("HypothesisFails",
             std::to_string(violations.size()) +
                 " cell(s) violate the preimage congruence",
             violations);

    CellwiseCongruenceReport report;
    report.modulus = n;
    report.chi_source = p.total();
    report.chi_target = euler_characteristic(full_subcomplex(y));
    report.congruent = reduce_mod(report.chi_source - report.chi_target, n) == 0;
    return report;
}

std::pair<long long, long long> solve_cone_system(long long delta_sigma, long long delta_boundary)
{
    const long long b = delta_boundary - delta_sigma;
    const long long a = 3 * delta_sigma - 2 * delta_boundary;
    return {a, b};
}

std::tuple<long long, long long, long long> solve_cone_system_dangling(long long delta_sigma,
                                                                       long long delta_v0,
                                                                       long long delta_v1)
{
    const long long c = delta_v1;
    const long long b = delta_v0 - delta_sigma;
    const long long a = delta_sigma - 2 * b - c;
    return {a, b, c};
}

namespace {

class Rebalancer {
public:
    Rebalancer(const EulerProfile& p, long long n)
        : y_(p.target()), n_(n), m_(p.open_values()), in_scope_(y_.cell_count(), 1)
    {
        if (y_.cell_count() == 0)
            fail("EmptySource", "profile has no cells");
        if (components(full_subcomplex(y_)).size() != 1)
            fail("TargetNotConnected", "rebalancing needs a connected target");
        if (!is_regular(y_))
            fail("TargetNotRegular", "rebalancing needs a regular target");
        bool positive = false;
        for (long long v : p.closed_values())
            if (v > 0)
                positive = true;
        if (!positive)
            fail("EmptySource", "profile has no positive closed value");

        long long total = 0;
        for (long long v : m_)
            total += v;
        long long chi_y = euler_characteristic(full_subcomplex(y_));
        if (reduce_mod(total - chi_y, n_) != 0)
            fail("GlobalCongruenceFails",
                 "chi(F) = " + std::to_string(total) + " is not congruent to chi(Y) = " +
                     std::to_string(chi_y) + " mod " + std::to_string(n_));

        // bank cell: the top cell of maximal dimension and smallest id
        base_ = -1;
        for (int c = 0; c < y_.cell_count(); ++c) {
            if (!y_.cofaces(c).empty())
                continue;
            if (base_ < 0 || y_.dim(c) > y_.dim(base_))
                base_ = c;
        }
    }

    RebalanceResult run()
    {
        while (live_count() > 0)
            step();
        std::vector<long long> closed(y_.cell_count());
        for (int p = 0; p < y_.cell_count(); ++p)
            closed[p] = closed_value(p);
        for (int p = 0; p < y_.cell_count(); ++p)
            if (reduce_mod(closed[p] - 1, n_) != 0)
                fail("InternalError", "rebalanced profile misses the congruence at cell " +
                                          std::to_string(y_.cell_id(p)));
        return {std::move(moves_), std::move(closed)};
    }

private:
    int live_count() const
    {
        int k = 0;
        for (char c : in_scope_)
            k += c;
        return k;
    }

    long long closed_value(int pos) const
    {
        long long v = 0;
        for (int q : y_.closure({pos}))
            v += m_[q];
        return v;
    }

    bool is_top(int pos) const
    {
        for (int c : y_.cofaces(pos))
            if (in_scope_[c])
                return false;
        return true;
    }

    std::vector<int> face_vertices(int edge) const
    {
        std::vector<int> v;
        for (const auto& [f, coeff] : y_.boundary(edge))
            v.push_back(f);
        std::sort(v.begin(), v.end());
        return v;
    }

    bool vertex_free(int v, int except_edge) const
    {
        for (int c : y_.cofaces(v))
            if (in_scope_[c] && c != except_edge)
                return false;
        return true;
    }

    bool connected_without(int removed) const
    {
        std::vector<int> live;
        for (int p = 0; p < y_.cell_count(); ++p)
            if (in_scope_[p] && p != removed)
                live.push_back(p);
        if (live.empty())
            return true;
        std::set<int> todo(live.begin(), live.end());
        std::vector<int> stack{live.front()};
        todo.erase(live.front());
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            auto visit = [&](int q) {
                auto it = todo.find(q);
                if (it != todo.end()) {
                    todo.erase(it);
                    stack.push_back(q);
                }
            };
            for (const auto& [f, coeff] : y_.boundary(p))
                visit(f);
            for (int c : y_.cofaces(p))
                visit(c);
        }
        return todo.empty();
    }

    void apply_plain(int sigma)
    {
        const int d = y_.dim(sigma);
        int entry = -1;
        for (const auto& [f, coeff] : y_.boundary(sigma))
            if (entry < 0 || f < entry)
                entry = f;
        const long long delta_sigma = reduce_mod(1 - closed_value(sigma), n_);
        long long boundary_agg = 0;
        for (int q : y_.closure({sigma}))
            if (q != sigma)
                boundary_agg += m_[q];
        const long long boundary_target = 1 - sign_of_dim(d);
        const long long delta_boundary = reduce_mod(boundary_target - boundary_agg, n_);
        const auto [a, b] = solve_cone_system(delta_sigma, delta_boundary);
        m_[sigma] -= b;
        m_[entry] += a + 3 * b;
        m_[base_] -= a + 2 * b;
        if (a != 0 || b != 0)
            moves_.push_back({y_.cell_id(sigma), a, b, std::nullopt, y_.cell_id(base_),
                              y_.cell_id(entry), std::nullopt});
        in_scope_[sigma] = 0;
    }

    void apply_dangling(int sigma, int v0, int v1)
    {
        const long long delta_sigma = reduce_mod(1 - closed_value(sigma), n_);
        const long long delta_v0 = reduce_mod(1 - m_[v0], n_);
        const long long delta_v1 = reduce_mod(1 - m_[v1], n_);
        const auto [a, b, c] = solve_cone_system_dangling(delta_sigma, delta_v0, delta_v1);
        m_[sigma] -= b + c;
        m_[v0] += a + 3 * b + c;
        m_[v1] += c;
        m_[base_] -= a + 2 * b + c;
        if (a != 0 || b != 0 || c != 0)
            moves_.push_back({y_.cell_id(sigma), a, b, c, y_.cell_id(base_), y_.cell_id(v0),
                              y_.cell_id(v1)});
        in_scope_[sigma] = 0;
        in_scope_[v1] = 0;
    }

    void step()
    {
        std::vector<int> tops;
        for (int p = 0; p < y_.cell_count(); ++p)
            if (in_scope_[p] && is_top(p))
                tops.push_back(p);

        if (tops.size() == 1 && tops[0] == base_ && in_scope_[base_]) {
            // scope is the closure of the bank cell
            const int d = y_.dim(base_);
            if (d == 0) {
                if (reduce_mod(closed_value(base_) - 1, n_) != 0)
                    fail("InternalError", "terminal vertex violates the congruence");
                in_scope_[base_] = 0;
                return;
            }
            if (d == 1) {
                auto v = face_vertices(base_);
                apply_dangling(base_, v[0], v[1]);
                return;
            }
            in_scope_[base_] = 0;  // descend into the boundary; bank keeps absorbing
            return;
        }

        // prefer high dimension, then small id; skip the bank while
        // anything else is available
        std::sort(tops.begin(), tops.end(), [&](int a, int b) {
            if (y_.dim(a) != y_.dim(b))
                return y_.dim(a) > y_.dim(b);
            return a < b;
        });
        for (int sigma : tops) {
            if (sigma == base_ && in_scope_[base_])
                continue;
            const int d = y_.dim(sigma);
            if (d >= 2) {
                apply_plain(sigma);
                return;
            }
            if (d == 1) {
                auto v = face_vertices(sigma);
                const bool f0 = vertex_free(v[0], sigma);
                const bool f1 = vertex_free(v[1], sigma);
                if (f0 || f1) {
                    // strand the free end; when both are free prefer the
                    // larger id
                    const int v1 = f1 ? v[1] : v[0];
                    const int v0 = f1 ? v[0] : v[1];
                    apply_dangling(sigma, v0, v1);
                    return;
                }
                if (connected_without(sigma)) {
                    apply_plain(sigma);
                    return;
                }
                continue;  // attached bridge: peel elsewhere first
            }
            // isolated vertex: legal only as the very last cell, pre-fixed
            if (live_count() == 1) {
                if (reduce_mod(closed_value(sigma) - 1, n_) != 0)
                    fail("InternalError", "terminal vertex violates the congruence");
                in_scope_[sigma] = 0;
                return;
            }
        }
        fail("InternalError", "no peelable top cell; target is not regular enough");
    }

    const GCWComplex& y_;
    long long n_;
    std::vector<long long> m_;
    std::vector<char> in_scope_;
    int base_;
    std::vector<ConeMove> moves_;
};

}  // namespace

RebalanceResult rebalance_profile(const EulerProfile& p, long long n)
{
    if (n < 0)
        fail("InvalidInput", "modulus must be nonnegative");
    return Rebalancer(p, n).run();
}

DeficitVector deficit_vector(const std::map<int, long long>& fixed_chi, const GCWComplex& y,
                             const Subgroup& g_full)
{
    auto fixed = fixed_subcomplex(y, g_full);
    auto comps = components(fixed);
    DeficitVector v;
    for (const auto& c : comps) {
        const int id = y.cell_id(c.positions().front());
        auto it = fixed_chi.find(id);
        if (it == fixed_chi.end())
            fail("ComponentMismatch",
                 "no source Euler characteristic for component " + std::to_string(id), {id});
        v.components.push_back(id);
        v.entries.push_back(it->second - euler_characteristic(c));
    }
    if (fixed_chi.size() != v.components.size())
        fail("ComponentMismatch", "input names components that do not exist");
    return v;
}

DeficitVector negate(const DeficitVector& v)
{
    DeficitVector out = v;
    for (auto& e : out.entries)
        e = -e;
    return out;
}

DeficitVector add(const DeficitVector& v, const DeficitVector& w)
{
    if (v.components != w.components)
        fail("ComponentMismatch", "deficit vectors index different components");
    DeficitVector out = v;
    for (size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] += w.entries[i];
    return out;
}

NyMembership ny_membership(const DeficitVector& v, const Modulus& modulus)
{
    if (!modulus.is_known())
        return NyMembership::Indeterminate;
    long long sum = 0;
    bool all = true;
    for (long long e : v.entries) {
        sum += e;
        if (!modulus.divides(e))
            all = false;
    }
    if (all)
        return NyMembership::InLowerBound;
    if (!modulus.divides(sum))
        return NyMembership::OutsideUpperBound;
    return NyMembership::InUpperBoundOnly;
}

}  // namespace eqfix
