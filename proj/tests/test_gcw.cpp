#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "catalog.hpp"
#include "eqfix/error.hpp"
#include "eqfix/gcw.hpp"

using namespace eqfix;

namespace {

std::vector<long long> betti_of(const Subcomplex& s)
{
    auto h = homology_integral(chain_complex(s));
    std::vector<long long> b;
    for (const auto& d : h)
        b.push_back(d.betti);
    return b;
}

}  // namespace

TEST_CASE("validation accepts the catalog")
{
    CHECK(validate(catalog::point()).ok());
    CHECK(validate(catalog::circle()).ok());
    CHECK(validate(catalog::conjugation_circle()).ok());
    CHECK(validate(catalog::free_circle()).ok());
    CHECK(validate(catalog::sphere()).ok());
    CHECK(validate(catalog::projective_plane()).ok());
    CHECK(validate(catalog::square_cover()).ok());
    CHECK(validate(catalog::disk_over_cycle(5)).ok());
}

TEST_CASE("validation reports specific violations")
{
    // perturb the conjugation circle: swap edges without matching boundary
    std::map<int, std::vector<std::array<int, 3>>> action;
    action[0] = {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}};
    action[1] = {{0, 0, 1}, {1, 1, 1}, {2, 3, 1}, {3, 2, 1}};
    GCWComplex bad(catalog::z2(), {{0, 0}, {1, 0}, {2, 1}, {3, 1}},
                   {{2, {{0, -1}, {1, 1}}}, {3, {{0, 1}, {1, -1}}}}, action);
    auto report = validate(bad);
    REQUIRE_FALSE(report.ok());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.rule == "action-boundary")
            found = true;
    CHECK(found);

    // sign -1 on a fixed cell violates admissibility
    std::map<int, std::vector<std::array<int, 3>>> flip;
    flip[0] = {{0, 0, 1}};
    flip[1] = {{0, 0, -1}};
    GCWComplex inadm(catalog::z2(), {{0, 0}}, {}, flip);
    auto r2 = validate(inadm);
    bool adm = false;
    for (const auto& v : r2.violations)
        if (v.rule == "admissibility")
            adm = true;
    CHECK(adm);
}

TEST_CASE("fixed subcomplex")
{
    auto conj = catalog::conjugation_circle();
    auto whole = fixed_subcomplex(conj, Subgroup::trivial(conj.group()));
    CHECK(whole.size() == 4);

    auto fixed = fixed_subcomplex(conj, Subgroup::whole(conj.group()));
    CHECK(fixed.cell_ids() == std::vector<int>{0, 1});

    auto fre = catalog::free_circle();
    CHECK(fixed_subcomplex(fre, Subgroup::whole(fre.group())).size() == 0);

    // monotonicity: K <= H implies fix(H) subset of fix(K)
    auto sq = catalog::square_cover();
    auto subs = all_subgroups(sq.group());
    for (const auto& h : subs)
        for (const auto& k : subs) {
            if (!h.contains(k))
                continue;
            auto fh = fixed_subcomplex(sq, h);
            auto fk = fixed_subcomplex(sq, k);
            for (int p : fh.positions())
                CHECK(fk.contains(p));
        }
}

TEST_CASE("components")
{
    GCWComplex two_points(FiniteGroup::trivial(), {{0, 0}, {5, 0}}, {}, {});
    CHECK(components(full_subcomplex(two_points)).size() == 2);

    auto circ = catalog::circle();
    CHECK(components(full_subcomplex(circ)).size() == 1);

    auto conj = catalog::conjugation_circle();
    auto fixed = fixed_subcomplex(conj, Subgroup::whole(conj.group()));
    auto comps = components(fixed);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].cell_ids() == std::vector<int>{0});
    CHECK(comps[1].cell_ids() == std::vector<int>{1});
}

TEST_CASE("euler characteristic")
{
    CHECK(euler_characteristic(full_subcomplex(catalog::point())) == 1);
    CHECK(euler_characteristic(full_subcomplex(catalog::circle())) == 0);
    CHECK(euler_characteristic(full_subcomplex(catalog::sphere())) == 2);

    // inclusion-exclusion on random face-closed subcomplexes
    std::mt19937 rng(7);
    auto sq = catalog::disk_over_cycle(6);
    const int n = sq.cell_count();
    for (int trial = 0; trial < 50; ++trial) {
        auto pick = [&] {
            std::vector<int> seed;
            for (int p = 0; p < n; ++p)
                if (rng() % 2)
                    seed.push_back(p);
            return Subcomplex(&sq, sq.closure(seed));
        };
        auto a = pick();
        auto b = pick();
        std::vector<int> uni, inter;
        std::set_union(a.positions().begin(), a.positions().end(), b.positions().begin(),
                       b.positions().end(), std::back_inserter(uni));
        std::set_intersection(a.positions().begin(), a.positions().end(), b.positions().begin(),
                              b.positions().end(), std::back_inserter(inter));
        Subcomplex u(&sq, uni), i(&sq, inter);
        CHECK(euler_characteristic(u) ==
              euler_characteristic(a) + euler_characteristic(b) - euler_characteristic(i));
    }
}

TEST_CASE("delta invariant")
{
    GCWComplex pt(catalog::s3(), {{0, 0}}, {}, {});
    CHECK(delta_invariant(pt, Subgroup::whole(pt.group())) == 1);

    auto fre = catalog::free_circle();
    CHECK(delta_invariant(fre, Subgroup::whole(fre.group())) == 0);

    auto conj = catalog::conjugation_circle();
    CHECK(delta_invariant(conj, Subgroup::whole(conj.group())) == 2);

    // weighted sum over subgroup conjugacy classes reproduces chi
    for (const auto& x : {catalog::conjugation_circle(), catalog::free_circle(),
                          catalog::square_cover()}) {
        auto subs = all_subgroups(x.group());
        std::set<std::vector<int>> counted;
        long long total = 0;
        for (const auto& h : subs) {
            if (counted.count(h.elements()))
                continue;
            for (int g = 0; g < x.group()->order(); ++g)
                counted.insert(h.conjugated(g).elements());
            total += delta_invariant(x, h) * (x.group()->order() / h.size());
        }
        CHECK(total == euler_characteristic(full_subcomplex(x)));
    }
}

TEST_CASE("chain complex assembly")
{
    auto pt = catalog::point();
    auto c = chain_complex(full_subcomplex(pt));
    CHECK(c.ranks == std::vector<int>{1});

    auto circ = catalog::circle();
    auto cc = chain_complex(full_subcomplex(circ));
    REQUIRE(cc.ranks == std::vector<int>{2, 2});
    for (int j = 0; j < 2; ++j) {
        Int colsum = cc.boundaries[1].at(0, j) + cc.boundaries[1].at(1, j);
        CHECK(colsum == 0);
    }

    auto iv = chain_complex(full_subcomplex(catalog::interval()));
    CHECK(iv.boundaries[1].at(0, 0) == -1);
    CHECK(iv.boundaries[1].at(1, 0) == 1);
}

TEST_CASE("integral homology")
{
    auto circ = betti_of(full_subcomplex(catalog::circle()));
    CHECK(circ == std::vector<long long>{1, 1});

    auto rp2 = homology_integral(chain_complex(full_subcomplex(catalog::projective_plane())));
    REQUIRE(rp2.size() == 3);
    CHECK(rp2[0].betti == 1);
    CHECK(rp2[0].torsion.empty());
    CHECK(rp2[1].betti == 0);
    REQUIRE(rp2[1].torsion.size() == 1);
    CHECK(rp2[1].torsion[0] == 2);
    CHECK(rp2[2].betti == 0);

    auto sph = betti_of(full_subcomplex(catalog::sphere()));
    CHECK(sph == std::vector<long long>{1, 0, 1});
}

TEST_CASE("mod p homology")
{
    auto rp2 = homology_mod_p(chain_complex(full_subcomplex(catalog::projective_plane())), 2);
    CHECK(rp2 == std::vector<long long>{1, 1, 1});

    auto circ = homology_mod_p(chain_complex(full_subcomplex(catalog::circle())), 3);
    CHECK(circ == std::vector<long long>{1, 1});

    auto pt = homology_mod_p(chain_complex(full_subcomplex(catalog::point())), 5);
    CHECK(pt == std::vector<long long>{1});
}

TEST_CASE("universal coefficients consistency")
{
    for (const auto& x : {catalog::projective_plane(), catalog::sphere(), catalog::circle(),
                          catalog::disk_over_cycle(4)}) {
        auto c = chain_complex(full_subcomplex(x));
        auto hz = homology_integral(c);
        for (long long p : {2LL, 3LL, 5LL}) {
            auto hp = homology_mod_p(c, p);
            for (size_t d = 0; d < hp.size(); ++d) {
                auto count_p = [&](size_t deg) {
                    if (deg >= hz.size())
                        return 0LL;
                    long long k = 0;
                    for (const auto& t : hz[deg].torsion)
                        if (t % p == 0)
                            ++k;
                    return k;
                };
                CHECK(hp[d] == hz[d].betti + count_p(d) + (d >= 1 ? count_p(d - 1) : 0));
            }
        }
    }
}

TEST_CASE("euler-poincare")
{
    for (const auto& x : {catalog::point(), catalog::circle(), catalog::sphere(),
                          catalog::projective_plane(), catalog::disk_over_cycle(7),
                          catalog::theta_graph()}) {
        auto s = full_subcomplex(x);
        auto h = homology_integral(chain_complex(s));
        long long chi = 0;
        for (size_t d = 0; d < h.size(); ++d)
            chi += (d % 2 == 0) ? h[d].betti : -h[d].betti;
        CHECK(chi == euler_characteristic(s));
    }
}

TEST_CASE("quotient complex")
{
    auto conj = catalog::conjugation_circle();
    auto q0 = quotient_complex(conj, Subgroup::trivial(conj.group()));
    CHECK(q0.cell_count() == 4);

    GCWComplex twopts(catalog::z2(), {{0, 0}, {1, 0}}, {},
                      {{0, {{0, 0, 1}, {1, 1, 1}}}, {1, {{0, 1, 1}, {1, 0, 1}}}});
    auto q1 = quotient_complex(twopts, Subgroup::whole(twopts.group()));
    CHECK(q1.cell_count() == 1);

    auto qi = quotient_complex(conj, Subgroup::whole(conj.group()));
    CHECK(qi.cell_count() == 3);
    auto h = homology_integral(chain_complex(full_subcomplex(qi)));
    CHECK(h[0].betti == 1);  // interval
    CHECK(h[1].betti == 0);

    // free quotient of the square is the circle
    auto sq = catalog::square_cover();
    auto base = quotient_complex(sq, Subgroup::generated(sq.group(), {1}));
    CHECK(base.cell_count() == 4);
    auto hb = homology_integral(chain_complex(full_subcomplex(base)));
    CHECK(hb[0].betti == 1);
    CHECK(hb[1].betti == 1);

    // quotient by the whole group: the reflections carry signs, and the
    // orbit space of the square is an interval
    auto arc = quotient_complex(sq, Subgroup::whole(sq.group()));
    CHECK(arc.cell_count() == 3);
    CHECK(validate(arc).ok());
    auto ha = homology_integral(chain_complex(full_subcomplex(arc)));
    CHECK(ha[0].betti == 1);
    CHECK(ha[1].betti == 0);
    CHECK(euler_characteristic(full_subcomplex(arc)) == 1);
}

TEST_CASE("subcomplex extraction")
{
    auto conj = catalog::conjugation_circle();
    auto fixed = fixed_subcomplex(conj, Subgroup::whole(conj.group()));
    auto standalone = subcomplex_as_complex(fixed);
    CHECK(standalone.cell_count() == 2);
    CHECK(standalone.group()->order() == 1);
    CHECK(validate(standalone).ok());
    CHECK(euler_characteristic(full_subcomplex(standalone)) == 2);
}

TEST_CASE("regularity flag")
{
    CHECK(is_regular(catalog::circle()));
    CHECK(is_regular(catalog::sphere()));
    CHECK(is_regular(catalog::disk_over_cycle(4)));
    CHECK(is_regular(catalog::theta_graph()));
    CHECK_FALSE(is_regular(catalog::projective_plane()));
}

TEST_CASE("subcomplex face closure enforced")
{
    auto circ = catalog::circle();
    CHECK_THROWS_AS(Subcomplex(&circ, {2}), Error);  // edge without endpoints
}
