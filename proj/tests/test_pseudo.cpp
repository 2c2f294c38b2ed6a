#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <random>

#include "catalog.hpp"
#include "eqfix/error.hpp"
#include "eqfix/pseudo.hpp"

using namespace eqfix;

namespace {

// ---- small exact rational linear algebra for the Wang oracle ------------

using RatMat = std::vector<std::vector<Rational>>;  // row major

int rat_rank(RatMat m)
{
    if (m.empty())
        return 0;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int rank = 0, row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(m[pivot], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (int j = col; j < cols; ++j)
            m[row][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            const Rational f = m[i][col];
            for (int j = col; j < cols; ++j)
                m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

// solves m x = b when consistent (m given column-wise)
std::vector<Rational> rat_solve(const std::vector<std::vector<Rational>>& columns,
                                std::vector<Rational> b)
{
    const int rows = static_cast<int>(b.size());
    const int cols = static_cast<int>(columns.size());
    RatMat m(rows, std::vector<Rational>(cols + 1, 0));
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            m[i][j] = columns[j][i];
    for (int i = 0; i < rows; ++i)
        m[i][cols] = b[i];

    std::vector<int> pivot_col_of_row(rows, -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i)
            if (m[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(m[pivot], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (int j = col; j <= cols; ++j)
            m[row][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0)
                continue;
            const Rational f = m[i][col];
            for (int j = col; j <= cols; ++j)
                m[i][j] -= f * m[row][j];
        }
        pivot_col_of_row[row] = col;
        ++row;
    }
    std::vector<Rational> x(cols, 0);
    for (int i = 0; i < row; ++i)
        x[pivot_col_of_row[i]] = m[i][cols];
    return x;
}

std::vector<Rational> column_of(const IntMatrix& m, int j)
{
    std::vector<Rational> v(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        v[i] = Rational(m.at(i, j));
    return v;
}

std::vector<std::vector<Rational>> rational_nullspace(const IntMatrix& m, int ambient)
{
    // kernel of an (rows x ambient) integer matrix, by RREF bookkeeping
    const int rows = m.rows();
    RatMat r(rows, std::vector<Rational>(ambient, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < ambient; ++j)
            r[i][j] = Rational(m.at(i, j));

    std::vector<int> pivot_of_col(ambient, -1);
    int row = 0;
    for (int col = 0; col < ambient && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i)
            if (r[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(r[pivot], r[row]);
        const Rational inv = Rational(1) / r[row][col];
        for (int j = col; j < ambient; ++j)
            r[row][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || r[i][col] == 0)
                continue;
            const Rational f = r[i][col];
            for (int j = col; j < ambient; ++j)
                r[i][j] -= f * r[row][j];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<std::vector<Rational>> basis;
    for (int col = 0; col < ambient; ++col) {
        if (pivot_of_col[col] >= 0)
            continue;
        std::vector<Rational> v(ambient, 0);
        v[col] = 1;
        for (int c2 = 0; c2 < col; ++c2)
            if (pivot_of_col[c2] >= 0)
                v[c2] = -r[pivot_of_col[c2]][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Rational homology of the mapping torus through the Wang identity:
// betti_d(T) = dim coker(1 - h_* | H_d) + dim ker(1 - h_* | H_(d-1)).
std::vector<long long> wang_betti(const ChainComplex& c, const ChainMap& h)
{
    const int top = c.top_degree();
    std::vector<int> dim_h(top + 1, 0);
    std::vector<RatMat> one_minus(top + 1);

    for (int d = 0; d <= top; ++d) {
        std::vector<std::vector<Rational>> cycles;
        if (d == 0) {
            for (int j = 0; j < c.rank(0); ++j) {
                std::vector<Rational> v(c.rank(0), 0);
                v[j] = 1;
                cycles.push_back(std::move(v));
            }
        } else {
            cycles = rational_nullspace(*c.boundary(d), c.rank(d));
        }
        std::vector<std::vector<Rational>> boundaries;
        if (d + 1 <= top)
            for (int j = 0; j < c.rank(d + 1); ++j)
                boundaries.push_back(column_of(*c.boundary(d + 1), j));

        // representatives: cycles independent modulo the boundaries
        std::vector<std::vector<Rational>> chosen = boundaries;
        std::vector<std::vector<Rational>> reps;
        auto rank_of_set = [&](const std::vector<std::vector<Rational>>& cols) {
            if (cols.empty())
                return 0;
            RatMat m(c.rank(d), std::vector<Rational>(cols.size(), 0));
            for (size_t j = 0; j < cols.size(); ++j)
                for (int i = 0; i < c.rank(d); ++i)
                    m[i][j] = cols[j][i];
            return rat_rank(m);
        };
        int current = rank_of_set(chosen);
        for (const auto& z : cycles) {
            chosen.push_back(z);
            const int next = rank_of_set(chosen);
            if (next > current) {
                reps.push_back(z);
                current = next;
            } else {
                chosen.pop_back();
            }
        }
        dim_h[d] = static_cast<int>(reps.size());

        // induced map on homology in the chosen basis
        std::vector<std::vector<Rational>> solve_basis = boundaries;
        for (const auto& r : reps)
            solve_basis.push_back(r);
        RatMat induced(dim_h[d], std::vector<Rational>(dim_h[d], 0));
        for (int k = 0; k < dim_h[d]; ++k) {
            std::vector<Rational> image(c.rank(d), 0);
            for (int i = 0; i < c.rank(d); ++i)
                for (int j = 0; j < c.rank(d); ++j)
                    image[i] += Rational(h.mats[d].at(i, j)) * reps[k][j];
            auto coeff = rat_solve(solve_basis, image);
            for (int i = 0; i < dim_h[d]; ++i)
                induced[i][k] = coeff[boundaries.size() + i];
        }
        RatMat m(dim_h[d], std::vector<Rational>(dim_h[d], 0));
        for (int i = 0; i < dim_h[d]; ++i)
            for (int j = 0; j < dim_h[d]; ++j)
                m[i][j] = (i == j ? Rational(1) : Rational(0)) - induced[i][j];
        one_minus[d] = std::move(m);
    }

    std::vector<long long> betti(top + 2, 0);
    for (int d = 0; d <= top + 1; ++d) {
        long long coker = 0, ker = 0;
        if (d <= top)
            coker = dim_h[d] - rat_rank(one_minus[d]);
        if (d - 1 >= 0 && d - 1 <= top)
            ker = dim_h[d - 1] - rat_rank(one_minus[d - 1]);
        betti[d] = coker + ker;
    }
    return betti;
}

std::vector<long long> betti_of(const ChainComplex& c)
{
    std::vector<long long> b;
    for (const auto& h : homology_integral(c))
        b.push_back(h.betti);
    return b;
}

bool torsion_free(const ChainComplex& c)
{
    for (const auto& h : homology_integral(c))
        if (!h.torsion.empty())
            return false;
    return true;
}

// random sums of elementary pieces: spheres, disks, and mod-m cylinders
ChainComplex random_chain_complex(std::mt19937& rng)
{
    const int top = 1 + rng() % 2;
    std::vector<int> ranks(top + 1, 0);
    struct Arrow {
        int degree;
        int from, to;
        int coeff;
    };
    std::vector<Arrow> arrows;
    for (int piece = 0; piece < 2 + static_cast<int>(rng() % 3); ++piece) {
        switch (rng() % 3) {
        case 0: {  // sphere in a random degree
            const int d = rng() % (top + 1);
            ranks[d] += 1;
            break;
        }
        case 1: {  // disk: identity arrow d -> d-1
            const int d = 1 + rng() % top;
            arrows.push_back({d, ranks[d], ranks[d - 1], 1});
            ranks[d] += 1;
            ranks[d - 1] += 1;
            break;
        }
        default: {  // multiplication by 2 or 3
            const int d = 1 + rng() % top;
            arrows.push_back({d, ranks[d], ranks[d - 1], 2 + static_cast<int>(rng() % 2)});
            ranks[d] += 1;
            ranks[d - 1] += 1;
            break;
        }
        }
    }
    if (ranks[0] == 0)
        ranks[0] = 1;
    std::vector<IntMatrix> boundaries(top + 1);
    boundaries[0] = IntMatrix(0, ranks[0]);
    for (int d = 1; d <= top; ++d)
        boundaries[d] = IntMatrix(ranks[d - 1], ranks[d]);
    for (const auto& a : arrows)
        boundaries[a.degree].at(a.to, a.from) = a.coeff;
    return make_chain_complex(std::move(ranks), std::move(boundaries));
}

// chain self-map: a * id + ds + sd for a random degree-raising s
ChainMap random_self_map(const ChainComplex& c, std::mt19937& rng)
{
    const int top = c.top_degree();
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<IntMatrix> s(top + 1);  // s[d]: C_d -> C_(d+1)
    for (int d = 0; d < top; ++d) {
        s[d] = IntMatrix(c.rank(d + 1), c.rank(d));
        for (int i = 0; i < s[d].rows(); ++i)
            for (int j = 0; j < s[d].cols(); ++j)
                s[d].at(i, j) = small(rng);
    }
    if (top >= 0)
        s[top] = IntMatrix(0, c.rank(top));

    const int a = small(rng);
    std::vector<IntMatrix> mats(top + 1);
    for (int d = 0; d <= top; ++d) {
        IntMatrix m(c.rank(d), c.rank(d));
        for (int i = 0; i < c.rank(d); ++i)
            m.at(i, i) = a;
        if (d + 1 <= top) {
            const IntMatrix ds = (*c.boundary(d + 1)) * s[d];
            for (int i = 0; i < c.rank(d); ++i)
                for (int j = 0; j < c.rank(d); ++j)
                    m.at(i, j) += ds.at(i, j);
        }
        if (d >= 1) {
            const IntMatrix sd = s[d - 1] * (*c.boundary(d));
            for (int i = 0; i < c.rank(d); ++i)
                for (int j = 0; j < c.rank(d); ++j)
                    m.at(i, j) += sd.at(i, j);
        }
        mats[d] = std::move(m);
    }
    return make_chain_map(&c, &c, std::move(mats));
}

ChainComplex point_complex()
{
    return make_chain_complex({1}, {IntMatrix(0, 1)});
}

ChainComplex loop_circle_complex()
{
    // one vertex, one loop edge: zero boundary
    return make_chain_complex({1, 1}, {IntMatrix(0, 1), IntMatrix(1, 1)});
}

}  // namespace

TEST_CASE("chain map validation")
{
    auto circ = chain_complex(full_subcomplex(catalog::circle()));
    CHECK_NOTHROW(identity_chain_map(&circ));

    // a non-commuting matrix pair is rejected
    std::vector<IntMatrix> bad(2);
    bad[0] = IntMatrix::identity(2);
    bad[1] = IntMatrix(2, 2);
    bad[1].at(0, 0) = 1;
    bad[1].at(1, 1) = 2;
    CHECK_THROWS_AS(make_chain_map(&circ, &circ, std::move(bad)), Error);
}

TEST_CASE("homology equivalence")
{
    for (const auto& x : {catalog::circle(), catalog::sphere(), catalog::projective_plane()}) {
        auto c = chain_complex(full_subcomplex(x));
        CHECK(is_homology_equivalence(identity_chain_map(&c)));
    }

    // zero self-map of the circle is not an equivalence
    auto circ = chain_complex(full_subcomplex(catalog::circle()));
    std::vector<IntMatrix> zero(2);
    zero[0] = IntMatrix(2, 2);
    zero[1] = IntMatrix(2, 2);
    CHECK_FALSE(is_homology_equivalence(make_chain_map(&circ, &circ, std::move(zero))));

    // multiplication by 2 on the loop model: the cone carries Z/2
    auto loop = loop_circle_complex();
    std::vector<IntMatrix> twice(2);
    twice[0] = IntMatrix::identity(1);
    twice[1] = IntMatrix(1, 1);
    twice[1].at(0, 0) = 2;
    auto by_two = make_chain_map(&loop, &loop, std::move(twice));
    CHECK_FALSE(is_homology_equivalence(by_two));
    auto cone = mapping_cone(by_two);
    auto h = homology_integral(cone);
    bool has_z2 = false;
    for (const auto& deg : h)
        for (const auto& t : deg.torsion)
            has_z2 = has_z2 || t == 2;
    CHECK(has_z2);

    // minus the identity is an equivalence, and compositions stay ones
    std::vector<IntMatrix> minus(2);
    minus[0] = IntMatrix(2, 2);
    minus[1] = IntMatrix(2, 2);
    for (int i = 0; i < 2; ++i) {
        minus[0].at(i, i) = -1;
        minus[1].at(i, i) = -1;
    }
    auto neg = make_chain_map(&circ, &circ, std::move(minus));
    CHECK(is_homology_equivalence(neg));
    CHECK(is_homology_equivalence(compose(neg, neg)));
}

TEST_CASE("smith conditions")
{
    for (const auto& x : {catalog::conjugation_circle(), catalog::free_circle(),
                          catalog::square_cover()}) {
        auto self = smith_conditions(x, x);
        CHECK(self.pass);
        CHECK_FALSE(self.entries.empty());
    }

    // free circle vs circle with two fixed points: the order-2 subgroup
    // sees an empty fixed set against two points
    auto report = smith_conditions(catalog::free_circle(), catalog::conjugation_circle());
    CHECK_FALSE(report.pass);
    REQUIRE(report.entries.size() == 1);
    CHECK(report.entries[0].prime == 2);
    CHECK(report.entries[0].betti_x.empty());
    CHECK(report.entries[0].betti_y == std::vector<long long>{2});

    // trivial-action circle vs trivial-action point: (1,1) vs (1)
    GCWComplex circle_z2(catalog::z2(), {{0, 0}, {1, 0}, {2, 1}, {3, 1}},
                         {{2, {{0, -1}, {1, 1}}}, {3, {{0, -1}, {1, 1}}}}, {});
    GCWComplex point_z2(catalog::z2(), {{0, 0}}, {}, {});
    auto r2 = smith_conditions(circle_z2, point_z2);
    CHECK_FALSE(r2.pass);
    CHECK(r2.entries[0].betti_x == std::vector<long long>{1, 1});
    CHECK(r2.entries[0].betti_y == std::vector<long long>{1});
}

TEST_CASE("mapping torus of named maps")
{
    // identity on a point gives the circle
    auto pt = point_complex();
    auto t1 = mapping_torus(pt, identity_chain_map(&pt));
    CHECK(t1.euler_characteristic() == 0);
    CHECK(betti_of(t1) == std::vector<long long>{1, 1});
    CHECK(torsion_free(t1));
    CHECK(wang_betti(pt, identity_chain_map(&pt)) == std::vector<long long>{1, 1});

    // degree-zero self-map of the sphere: H = (Z, Z, 0, 0)
    auto sph = chain_complex(full_subcomplex(catalog::sphere()));
    std::vector<IntMatrix> deg0(3);
    deg0[0] = IntMatrix(2, 2);
    deg0[0].at(0, 0) = 1;
    deg0[0].at(0, 1) = 1;  // both vertices to the first
    deg0[1] = IntMatrix(2, 2);
    deg0[2] = IntMatrix(2, 2);
    auto h0 = make_chain_map(&sph, &sph, std::move(deg0));
    auto t2 = mapping_torus(sph, h0);
    CHECK(t2.euler_characteristic() == 0);
    CHECK(betti_of(t2) == std::vector<long long>{1, 1, 0, 0});
    CHECK(torsion_free(t2));
    CHECK(wang_betti(sph, h0) == std::vector<long long>{1, 1, 0, 0});

    // identity on the circle gives the 2-torus
    auto circ = chain_complex(full_subcomplex(catalog::circle()));
    auto t3 = mapping_torus(circ, identity_chain_map(&circ));
    CHECK(t3.euler_characteristic() == 0);
    CHECK(betti_of(t3) == std::vector<long long>{1, 2, 1});
    CHECK(torsion_free(t3));
    CHECK(wang_betti(circ, identity_chain_map(&circ)) == std::vector<long long>{1, 2, 1});
}

TEST_CASE("mapping torus randomized properties")
{
    std::mt19937 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_chain_complex(rng);
        auto h = random_self_map(c, rng);
        // construction validates boundary-squared-zero internally
        auto t = mapping_torus(c, h);
        CHECK(t.euler_characteristic() == 0);
        CHECK(t.boundaries_compose_to_zero());
        CHECK(betti_of(t) == wang_betti(c, h));
    }
}

TEST_CASE("verdict decision table")
{
    // connected fixed set, zero deficit, modulus 0
    DeficitVector zero1{{0}, {0}};
    auto v1 = verdict(zero1, Modulus::known(0), nullptr);
    CHECK(v1.conclusion == Conclusion::SufficientPass);
    CHECK(exit_code(v1.conclusion) == 0);

    // modulus 1 wipes out every obstruction
    DeficitVector pm{{0, 1}, {1, -1}};
    auto v2 = verdict(pm, Modulus::known(1), nullptr);
    CHECK(v2.conclusion == Conclusion::SufficientPass);

    // between the bounds with no model context
    auto v3 = verdict(pm, Modulus::known(0), nullptr);
    CHECK(v3.conclusion == Conclusion::Indeterminate);
    CHECK(v3.membership == NyMembership::InUpperBoundOnly);
    CHECK(exit_code(v3.conclusion) == 2);

    // global failure dominates
    DeficitVector off{{0, 1}, {1, 0}};
    auto v4 = verdict(off, Modulus::known(0), nullptr);
    CHECK(v4.conclusion == Conclusion::NecessaryFail);
    CHECK(v4.global_congruence == TriState::Fail);
    CHECK(exit_code(v4.conclusion) == 1);

    // unknown modulus
    auto v5 = verdict(pm, Modulus::unknown(), nullptr);
    CHECK(v5.conclusion == Conclusion::Indeterminate);
    CHECK(v5.membership == NyMembership::Indeterminate);

    // an empty fixed set is declared out of scope, not decided
    DeficitVector empty{{}, {}};
    auto v6 = verdict(empty, Modulus::known(0), nullptr);
    CHECK(v6.conclusion == Conclusion::Indeterminate);
    CHECK(v6.reason.find("empty") != std::string::npos);
}

TEST_CASE("verdict with the weakly connected model")
{
    CoverModel m(catalog::square_cover(), {0, 1});
    VerdictContext ctx;
    ctx.cover = &m;

    // (1, -1): the global sum passes, only the componentwise layer fails
    DeficitVector pm{{0, 1}, {1, -1}};
    auto v = verdict(pm, Modulus::known(0), &ctx);
    CHECK(v.weakly_g_connected == true);
    CHECK(v.global_congruence == TriState::Pass);
    CHECK(v.conclusion == Conclusion::DefinitiveExactFail);
    CHECK(exit_code(v.conclusion) == 1);
    bool some_trace_failed = false;
    for (const auto& c : v.cyclic_checks)
        some_trace_failed = some_trace_failed || !c.pass;
    CHECK(some_trace_failed);

    // zero deficits pass definitively, and passing traces never demote
    DeficitVector zero{{0, 1}, {0, 0}};
    auto vz = verdict(zero, Modulus::known(0), &ctx);
    CHECK(vz.conclusion == Conclusion::DefinitiveExactPass);
    CHECK(exit_code(vz.conclusion) == 0);
    auto vz_plain = verdict(zero, Modulus::known(0), nullptr);
    CHECK(vz_plain.conclusion == Conclusion::SufficientPass);

    // mismatched component ids are rejected
    DeficitVector wrong{{0, 7}, {0, 0}};
    CHECK_THROWS_AS(verdict(wrong, Modulus::known(0), &ctx), Error);
}

TEST_CASE("trace failure on a non weakly connected model")
{
    // two disjoint squares: four fixed components, two splitting classes
    auto gamma = catalog::klein4();
    std::vector<std::pair<int, int>> cells;
    std::map<int, std::vector<std::pair<int, int>>> boundary;
    std::map<int, std::vector<std::array<int, 3>>> gens;
    gens[1] = {};
    gens[2] = {};
    for (int offset : {0, 10}) {
        for (int k = 0; k < 4; ++k) {
            cells.push_back({offset + k, 0});
            cells.push_back({offset + 4 + k, 1});
            boundary[offset + 4 + k] = {{offset + k, -1}, {offset + (k + 1) % 4, 1}};
        }
        auto add = [&](int g, int from, int to, int sign) {
            gens[g].push_back({offset + from, offset + to, sign});
        };
        for (int g : {1, 2}) {
            if (g == 1) {
                add(g, 0, 2, 1); add(g, 1, 3, 1); add(g, 2, 0, 1); add(g, 3, 1, 1);
                add(g, 4, 6, 1); add(g, 5, 7, 1); add(g, 6, 4, 1); add(g, 7, 5, 1);
            } else {
                add(g, 0, 0, 1); add(g, 1, 3, 1); add(g, 2, 2, 1); add(g, 3, 1, 1);
                add(g, 4, 7, -1); add(g, 5, 6, -1); add(g, 6, 5, -1); add(g, 7, 4, -1);
            }
        }
    }
    auto action = action_from_generators(*gamma, cells, gens);
    GCWComplex two_squares(gamma, std::move(cells), boundary, action);
    REQUIRE(validate(two_squares).ok());
    CoverModel m(two_squares, {0, 1});

    auto assignments = component_splittings(m);
    REQUIRE(assignments.size() == 4);
    CHECK_FALSE(is_weakly_g_connected(assignments));

    VerdictContext ctx;
    ctx.cover = &m;

    // deficits grouped by class: (1, -1, 0, 0) breaks one class sum while
    // the global sum stays zero
    DeficitVector bad{{0, 1, 10, 11}, {1, -1, 0, 0}};
    auto v = verdict(bad, Modulus::known(0), &ctx);
    CHECK(v.conclusion == Conclusion::NecessaryFail);
    CHECK(v.reason == "a trace congruence fails");

    // balanced within both classes: passes every trace but stays between
    // the bounds
    DeficitVector balanced{{0, 1, 10, 11}, {1, 0, -1, 0}};
    auto v2 = verdict(balanced, Modulus::known(0), &ctx);
    CHECK(v2.conclusion == Conclusion::Indeterminate);
}
