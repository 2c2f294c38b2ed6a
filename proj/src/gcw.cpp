#include "eqfix/gcw.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eqfix/error.hpp"

namespace eqfix {

GCWComplex::GCWComplex(GroupPtr group,
                       std::vector<std::pair<int, int>> cells,
                       const std::map<int, std::vector<std::pair<int, int>>>& boundary,
                       const std::map<int, std::vector<std::array<int, 3>>>& action)
    : group_(std::move(group))
{
    std::sort(cells.begin(), cells.end());
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0 && cells[i].first == cells[i - 1].first)
            fail("InvalidInput", "duplicate cell id", {cells[i].first});
        if (cells[i].second < 0)
            fail("InvalidInput", "negative cell dimension", {cells[i].first});
        ids_.push_back(cells[i].first);
        dims_.push_back(cells[i].second);
    }

    const int n = cell_count();
    boundary_.assign(n, {});
    cofaces_.assign(n, {});
    for (const auto& [id, faces] : boundary) {
        const int pos = position_of(id);
        std::set<int> seen;
        for (const auto& [fid, coeff] : faces) {
            if (coeff == 0)
                continue;
            const int fpos = position_of(fid);
            if (!seen.insert(fpos).second)
                fail("InvalidInput", "face listed twice in one boundary", {id, fid});
            boundary_[pos].emplace_back(fpos, coeff);
        }
        std::sort(boundary_[pos].begin(), boundary_[pos].end());
    }
    for (int pos = 0; pos < n; ++pos)
        for (const auto& [fpos, coeff] : boundary_[pos])
            cofaces_[fpos].push_back(pos);

    const int order = group_->order();
    act_cell_.assign(order, {});
    act_sign_.assign(order, {});
    if (action.empty()) {
        // Identity action throughout.
        std::vector<int> id_perm(n);
        std::iota(id_perm.begin(), id_perm.end(), 0);
        for (int g = 0; g < order; ++g) {
            act_cell_[g] = id_perm;
            act_sign_[g].assign(n, 1);
        }
        return;
    }
    for (int g = 0; g < order; ++g) {
        auto it = action.find(g);
        if (it == action.end())
            fail("InvalidInput", "action table missing group element", {g});
        std::vector<int> img(n, -1), sgn(n, 0);
        for (const auto& [id, image_id, sign] : it->second) {
            const int pos = position_of(id);
            const int ipos = position_of(image_id);
            if (sign != 1 && sign != -1)
                fail("InvalidInput", "action sign must be +1 or -1", {id});
            if (img[pos] != -1)
                fail("InvalidInput", "cell mapped twice by one element", {g, id});
            img[pos] = ipos;
            sgn[pos] = sign;
        }
        std::vector<char> hit(n, 0);
        for (int pos = 0; pos < n; ++pos) {
            if (img[pos] < 0)
                fail("InvalidInput", "action does not cover every cell", {g, ids_[pos]});
            if (hit[img[pos]])
                fail("InvalidInput", "action is not a permutation of cells", {g});
            hit[img[pos]] = 1;
        }
        act_cell_[g] = std::move(img);
        act_sign_[g] = std::move(sgn);
    }
}

int GCWComplex::position_of(int id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
        fail("UnknownCell", "no cell with id " + std::to_string(id), {id});
    return static_cast<int>(it - ids_.begin());
}

bool GCWComplex::has_cell(int id) const
{
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

int GCWComplex::max_dim() const
{
    int m = -1;
    for (int d : dims_)
        m = std::max(m, d);
    return m;
}

std::vector<int> GCWComplex::closure(const std::vector<int>& positions) const
{
    std::vector<char> in(cell_count(), 0);
    std::vector<int> stack;
    for (int p : positions)
        if (!in[p]) {
            in[p] = 1;
            stack.push_back(p);
        }
    while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        for (const auto& [f, coeff] : boundary_[p])
            if (!in[f]) {
                in[f] = 1;
                stack.push_back(f);
            }
    }
    std::vector<int> out;
    for (int p = 0; p < cell_count(); ++p)
        if (in[p])
            out.push_back(p);
    return out;
}

ValidationReport validate(const GCWComplex& x)
{
    ValidationReport report;
    auto flag = [&](std::string rule, std::string detail) {
        report.violations.push_back({std::move(rule), std::move(detail)});
    };

    const int n = x.cell_count();
    for (int p = 0; p < n; ++p)
        for (const auto& [f, coeff] : x.boundary(p))
            if (x.dim(f) != x.dim(p) - 1)
                flag("boundary-dimension", "cell " + std::to_string(x.cell_id(p)) +
                                               " has incidence against cell " +
                                               std::to_string(x.cell_id(f)) +
                                               " of dimension " + std::to_string(x.dim(f)));

    // boundary of boundary = 0, coefficient-wise over the integers
    for (int p = 0; p < n; ++p) {
        std::map<int, long long> acc;
        for (const auto& [f, c1] : x.boundary(p))
            for (const auto& [ff, c2] : x.boundary(f))
                acc[ff] += static_cast<long long>(c1) * c2;
        for (const auto& [ff, total] : acc)
            if (total != 0)
                flag("boundary-squared", "dd(" + std::to_string(x.cell_id(p)) + ") hits cell " +
                                             std::to_string(x.cell_id(ff)) + " with coefficient " +
                                             std::to_string(total));
    }

    const auto& g = *x.group();
    for (int p = 0; p < n; ++p) {
        if (x.act_cell(FiniteGroup::kIdentity, p) != p ||
            x.act_sign(FiniteGroup::kIdentity, p) != 1) {
            flag("action-identity", "identity does not act trivially on cell " +
                                        std::to_string(x.cell_id(p)));
        }
    }
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            const int ab = g.mul(a, b);
            for (int p = 0; p < n; ++p) {
                const int via = x.act_cell(a, x.act_cell(b, p));
                const int sign_via = x.act_sign(b, p) * x.act_sign(a, x.act_cell(b, p));
                if (x.act_cell(ab, p) != via || x.act_sign(ab, p) != sign_via) {
                    flag("action-homomorphism",
                         "elements " + std::to_string(a) + "," + std::to_string(b) +
                             " disagree on cell " + std::to_string(x.cell_id(p)));
                }
            }
        }

    for (int a = 0; a < g.order(); ++a)
        for (int p = 0; p < n; ++p) {
            if (x.dim(p) != x.dim(x.act_cell(a, p)))
                flag("action-dimension", "element " + std::to_string(a) + " changes dimension of cell " +
                                             std::to_string(x.cell_id(p)));
            // d(g.c) must equal g.d(c)
            std::map<int, long long> lhs, rhs;
            for (const auto& [f, coeff] : x.boundary(x.act_cell(a, p)))
                lhs[f] += static_cast<long long>(coeff) * x.act_sign(a, p);
            for (const auto& [f, coeff] : x.boundary(p))
                rhs[x.act_cell(a, f)] += static_cast<long long>(coeff) * x.act_sign(a, f);
            if (lhs != rhs)
                flag("action-boundary", "element " + std::to_string(a) +
                                            " does not commute with the boundary on cell " +
                                            std::to_string(x.cell_id(p)));
        }

    for (int a = 0; a < g.order(); ++a)
        for (int p = 0; p < n; ++p)
            if (x.act_cell(a, p) == p && x.act_sign(a, p) != 1)
                flag("admissibility", "element " + std::to_string(a) + " fixes cell " +
                                          std::to_string(x.cell_id(p)) + " with sign -1");

    return report;
}

Subcomplex::Subcomplex(const GCWComplex* parent, std::vector<int> positions)
    : parent_(parent), positions_(std::move(positions))
{
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    for (int p : positions_)
        for (const auto& [f, coeff] : parent_->boundary(p))
            if (!contains(f))
                fail("NotFaceClosed", "cell " + std::to_string(parent_->cell_id(p)) +
                                          " has a face outside the subcomplex",
                     {parent_->cell_id(p), parent_->cell_id(f)});
}

bool Subcomplex::contains(int pos) const
{
    return std::binary_search(positions_.begin(), positions_.end(), pos);
}

std::vector<int> Subcomplex::cell_ids() const
{
    std::vector<int> ids;
    ids.reserve(positions_.size());
    for (int p : positions_)
        ids.push_back(parent_->cell_id(p));
    return ids;
}

Subcomplex full_subcomplex(const GCWComplex& x)
{
    std::vector<int> all(x.cell_count());
    std::iota(all.begin(), all.end(), 0);
    return Subcomplex(&x, std::move(all));
}

Subcomplex fixed_subcomplex(const GCWComplex& x, const Subgroup& h)
{
    std::vector<int> fixed;
    for (int p = 0; p < x.cell_count(); ++p) {
        bool ok = true;
        for (int a : h.elements())
            if (x.act_cell(a, p) != p) {
                ok = false;
                break;
            }
        if (ok)
            fixed.push_back(p);
    }
    return Subcomplex(&x, std::move(fixed));
}

std::vector<Subcomplex> components(const Subcomplex& s)
{
    const auto& x = s.parent();
    const auto& cells = s.positions();
    std::map<int, int> comp;  // position -> component label
    for (int p : cells)
        comp[p] = -1;
    int label = 0;
    for (int seed : cells) {
        if (comp[seed] != -1)
            continue;
        std::vector<int> stack{seed};
        comp[seed] = label;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            auto visit = [&](int q) {
                auto it = comp.find(q);
                if (it != comp.end() && it->second == -1) {
                    it->second = label;
                    stack.push_back(q);
                }
            };
            for (const auto& [f, coeff] : x.boundary(p))
                visit(f);
            for (int c : x.cofaces(p))
                visit(c);
        }
        ++label;
    }
    std::vector<std::vector<int>> groups(label);
    for (int p : cells)
        groups[comp[p]].push_back(p);
    // Positions ascend with cell ids, so seeds already give the canonical
    // smallest-cell-id ordering.
    std::vector<Subcomplex> out;
    out.reserve(groups.size());
    for (auto& g : groups)
        out.emplace_back(&x, std::move(g));
    return out;
}

long long euler_characteristic(const Subcomplex& s)
{
    long long chi = 0;
    for (int p : s.positions())
        chi += (s.parent().dim(p) % 2 == 0) ? 1 : -1;
    return chi;
}

Subgroup cell_stabilizer(const GCWComplex& x, int pos)
{
    std::vector<int> elems;
    for (int a = 0; a < x.group()->order(); ++a)
        if (x.act_cell(a, pos) == pos)
            elems.push_back(a);
    return Subgroup(x.group(), std::move(elems));
}

std::vector<std::vector<int>> cell_orbits(const GCWComplex& x)
{
    std::vector<char> seen(x.cell_count(), 0);
    std::vector<std::vector<int>> orbits;
    for (int p = 0; p < x.cell_count(); ++p) {
        if (seen[p])
            continue;
        std::set<int> orbit;
        for (int a = 0; a < x.group()->order(); ++a)
            orbit.insert(x.act_cell(a, p));
        std::vector<int> v(orbit.begin(), orbit.end());
        for (int q : v)
            seen[q] = 1;
        orbits.push_back(std::move(v));
    }
    return orbits;
}

long long delta_invariant(const GCWComplex& x, const Subgroup& h)
{
    const auto& g = *x.group();
    auto conjugate_to_h = [&](const Subgroup& s) {
        if (s.size() != h.size())
            return false;
        for (int a = 0; a < g.order(); ++a)
            if (h.conjugated(a) == s)
                return true;
        return false;
    };
    long long delta = 0;
    for (const auto& orbit : cell_orbits(x)) {
        const Subgroup stab = cell_stabilizer(x, orbit.front());
        if (!conjugate_to_h(stab))
            continue;
        delta += (x.dim(orbit.front()) % 2 == 0) ? 1 : -1;
    }
    return delta;
}

bool is_regular(const GCWComplex& x)
{
    for (int p = 0; p < x.cell_count(); ++p) {
        const int d = x.dim(p);
        for (const auto& [f, coeff] : x.boundary(p))
            if (coeff != 1 && coeff != -1)
                return false;
        if (d == 1 && x.boundary(p).size() != 2)
            return false;
        if (d >= 1) {
            std::vector<int> proper;
            for (const auto& [f, coeff] : x.boundary(p))
                proper.push_back(f);
            auto cl = x.closure(proper);
            long long chi = 0;
            for (int q : cl)
                chi += (x.dim(q) % 2 == 0) ? 1 : -1;
            if (chi != 1 - ((d % 2 == 0) ? 1 : -1))
                return false;
            if (d >= 2) {
                Subcomplex bd(&x, cl);
                if (components(bd).size() != 1)
                    return false;
            }
        }
    }
    return true;
}

ChainComplex chain_complex(const Subcomplex& s)
{
    const auto& x = s.parent();
    const int top = [&] {
        int m = -1;
        for (int p : s.positions())
            m = std::max(m, x.dim(p));
        return m;
    }();
    std::vector<std::vector<int>> by_dim(top + 1);
    std::map<int, int> index_in_dim;
    for (int p : s.positions()) {
        index_in_dim[p] = static_cast<int>(by_dim[x.dim(p)].size());
        by_dim[x.dim(p)].push_back(p);
    }
    std::vector<int> ranks(top + 1);
    for (int d = 0; d <= top; ++d)
        ranks[d] = static_cast<int>(by_dim[d].size());
    std::vector<IntMatrix> boundaries(top + 1);
    for (int d = 1; d <= top; ++d) {
        IntMatrix m(ranks[d - 1], ranks[d]);
        for (int j = 0; j < ranks[d]; ++j)
            for (const auto& [f, coeff] : x.boundary(by_dim[d][j]))
                m.at(index_in_dim.at(f), j) = coeff;
        boundaries[d] = std::move(m);
    }
    if (top >= 0)
        boundaries[0] = IntMatrix(0, ranks[0]);
    return make_chain_complex(std::move(ranks), std::move(boundaries));
}

GCWComplex quotient_complex(const GCWComplex& x, const Subgroup& h)
{
    const int n = x.cell_count();
    // Orbits of cells under h; representative = smallest position.
    std::vector<int> rep(n, -1);
    std::vector<int> align(n, 0);  // sign of the element carrying rep to the cell
    for (int p = 0; p < n; ++p) {
        if (rep[p] != -1)
            continue;
        for (int a : h.elements()) {
            const int q = x.act_cell(a, p);
            if (rep[q] == -1) {
                rep[q] = p;
                align[q] = x.act_sign(a, p);
            }
        }
    }

    std::vector<std::pair<int, int>> cells;
    std::map<int, std::vector<std::pair<int, int>>> boundary;
    for (int p = 0; p < n; ++p) {
        if (rep[p] != p)
            continue;
        cells.emplace_back(x.cell_id(p), x.dim(p));
        std::map<int, int> acc;
        for (const auto& [f, coeff] : x.boundary(p))
            acc[x.cell_id(rep[f])] += coeff * align[f];
        std::vector<std::pair<int, int>> row;
        for (const auto& [fid, c] : acc)
            if (c != 0)
                row.emplace_back(fid, c);
        if (!row.empty())
            boundary[x.cell_id(p)] = std::move(row);
    }
    return GCWComplex(FiniteGroup::trivial(), std::move(cells), boundary, {});
}

GCWComplex subcomplex_as_complex(const Subcomplex& s)
{
    const auto& x = s.parent();
    std::vector<std::pair<int, int>> cells;
    std::map<int, std::vector<std::pair<int, int>>> boundary;
    for (int p : s.positions()) {
        cells.emplace_back(x.cell_id(p), x.dim(p));
        std::vector<std::pair<int, int>> row;
        for (const auto& [f, coeff] : x.boundary(p))
            row.emplace_back(x.cell_id(f), coeff);
        if (!row.empty())
            boundary[x.cell_id(p)] = std::move(row);
    }
    return GCWComplex(FiniteGroup::trivial(), std::move(cells), boundary, {});
}

std::map<int, std::vector<std::array<int, 3>>> action_from_generators(
    const FiniteGroup& group,
    const std::vector<std::pair<int, int>>& cells,
    const std::map<int, std::vector<std::array<int, 3>>>& generator_actions)
{
    std::vector<int> ids;
    for (const auto& [id, d] : cells)
        ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::map<int, int> pos;
    for (size_t i = 0; i < ids.size(); ++i)
        pos[ids[i]] = static_cast<int>(i);
    const int n = static_cast<int>(ids.size());

    auto to_table = [&](const std::vector<std::array<int, 3>>& rows) {
        std::vector<std::pair<int, int>> t(n, {-1, 0});
        for (const auto& [id, img, sign] : rows)
            t[pos.at(id)] = {pos.at(img), sign};
        for (const auto& [img, sign] : t)
            if (img < 0)
                fail("InvalidInput", "generator action does not cover every cell");
        return t;
    };

    std::vector<std::vector<std::pair<int, int>>> table(group.order());
    std::vector<char> known(group.order(), 0);
    table[FiniteGroup::kIdentity].resize(n);
    for (int i = 0; i < n; ++i)
        table[FiniteGroup::kIdentity][i] = {i, 1};
    known[FiniteGroup::kIdentity] = 1;

    std::vector<int> frontier{FiniteGroup::kIdentity};
    std::vector<int> gens;
    for (const auto& [g, rows] : generator_actions) {
        table[g] = to_table(rows);
        if (!known[g]) {
            known[g] = 1;
            frontier.push_back(g);
        }
        gens.push_back(g);
    }
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int w : frontier)
            for (int g : gens) {
                const int gw = group.mul(g, w);
                if (known[gw])
                    continue;
                std::vector<std::pair<int, int>> t(n);
                for (int i = 0; i < n; ++i) {
                    const auto& [mid, msign] = table[w][i];
                    const auto& [mid2, msign2] = table[g][mid];
                    t[i] = {mid2, msign * msign2};
                }
                table[gw] = std::move(t);
                known[gw] = 1;
                next.push_back(gw);
            }
        frontier = std::move(next);
    }
    for (int g = 0; g < group.order(); ++g)
        if (!known[g])
            fail("InvalidInput", "generator actions do not generate the group", {g});

    std::map<int, std::vector<std::array<int, 3>>> out;
    for (int g = 0; g < group.order(); ++g) {
        std::vector<std::array<int, 3>> rows;
        rows.reserve(n);
        for (int i = 0; i < n; ++i)
            rows.push_back({ids[i], ids[table[g][i].first], table[g][i].second});
        out[g] = std::move(rows);
    }
    return out;
}

}  // namespace eqfix
