#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "catalog.hpp"
#include "eqfix/error.hpp"
#include "eqfix/splittings.hpp"

using namespace eqfix;

namespace {

ExtensionData klein_extension()
{
    // total = Z2 x Z2, kernel = the rotation {0, 1}
    return quotient_extension(catalog::klein4(), {0, 1});
}

CoverModel square_model()
{
    return CoverModel(catalog::square_cover(), {0, 1});
}

}  // namespace

TEST_CASE("splitting classes")
{
    // trivial kernel: the one class {G}
    auto s3 = catalog::s3();
    auto triv = quotient_extension(s3, {0});
    auto one = splitting_classes(triv);
    REQUIRE(one.size() == 1);
    REQUIRE(one[0].representatives.size() == 1);
    CHECK(one[0].representatives[0] == Subgroup::whole(s3));

    // abelian total group: conjugation is trivial, two classes
    auto k4 = klein_extension();
    auto classes = splitting_classes(k4);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].representatives[0].elements() == std::vector<int>{0, 2});
    CHECK(classes[1].representatives[0].elements() == std::vector<int>{0, 3});

    // dihedral of order 10, kernel = rotations: one class of 5 reflections
    auto d5 = catalog::dihedral(5);
    std::vector<int> rotations;
    for (int g = 0; g < d5->order(); ++g)
        if (d5->element_order(g) == 5 || g == 0)
            rotations.push_back(g);
    auto ext = quotient_extension(d5, rotations);
    auto dcl = splitting_classes(ext);
    REQUIRE(dcl.size() == 1);
    CHECK(dcl[0].representatives.size() == 5);

    // no complement at all: Z4 over its order-2 subgroup
    auto z4 = catalog::z4();
    auto none = splitting_classes(quotient_extension(z4, {0, 2}));
    CHECK(none.empty());
}

TEST_CASE("complement shape invariants")
{
    auto k4 = klein_extension();
    for (const auto& cls : splitting_classes(k4))
        for (const auto& rep : cls.representatives) {
            CHECK(rep.size() == k4.quotient->order());
            std::set<int> image;
            for (int x : rep.elements())
                image.insert(k4.projection(x));
            CHECK(static_cast<int>(image.size()) == k4.quotient->order());
        }

    // kernel conjugation permutes classes setwise
    auto d5 = catalog::dihedral(5);
    std::vector<int> rotations;
    for (int g = 0; g < d5->order(); ++g)
        if (d5->element_order(g) == 5 || g == 0)
            rotations.push_back(g);
    auto ext = quotient_extension(d5, rotations);
    auto classes = splitting_classes(ext);
    for (const auto& cls : classes)
        for (const auto& rep : cls.representatives)
            for (int a : ext.kernel.elements())
                CHECK(class_of_subgroup(classes, rep.conjugated(a)) == cls.id);
}

TEST_CASE("square cover model")
{
    auto m = square_model();
    CHECK(m.base().cell_count() == 4);
    CHECK(m.base().group()->order() == 2);

    // fixed set of the base: two vertex components
    auto asn = component_splittings(m);
    REQUIRE(asn.size() == 2);
    CHECK(asn[0].component_id == 0);
    CHECK(asn[1].component_id == 1);
    CHECK(asn[0].chi == 1);
    CHECK(asn[1].chi == 1);
    CHECK(asn[0].class_id != asn[1].class_id);
    CHECK(asn[0].stabilizer.elements() == std::vector<int>{0, 2});
    CHECK(asn[1].stabilizer.elements() == std::vector<int>{0, 3});

    CHECK(is_weakly_g_connected(asn));
}

TEST_CASE("lift independence")
{
    auto m = square_model();
    auto classes = splitting_classes(m.extension());
    auto lifts = fixed_preimage_components(m);
    REQUIRE(lifts.size() == 2);
    for (const auto& per_component : lifts) {
        REQUIRE(per_component.size() == 2);  // kernel of order 2, vertex fibers
        std::set<int> ids;
        for (const auto& lift : per_component)
            ids.insert(class_of_subgroup(classes, lift_stabilizer(m.cover(), lift)));
        CHECK(ids.size() == 1);  // the class does not depend on the lift
    }
}

TEST_CASE("weakly connected predicate")
{
    CHECK(is_weakly_g_connected({}));  // empty fixed set

    auto m = square_model();
    CHECK(is_weakly_g_connected(component_splittings(m)));

    std::vector<ComponentAssignment> same{
        {0, 1, 0, Subgroup::trivial(catalog::z2())},
        {1, 1, 0, Subgroup::trivial(catalog::z2())},
    };
    CHECK_FALSE(is_weakly_g_connected(same));
}

TEST_CASE("trivial kernel cover")
{
    // kernel = 1: the cover is its own base; every component gets the
    // unique class {G}, so weak connectivity means at most one component
    auto conj = catalog::conjugation_circle();
    CoverModel m(conj, {0});
    auto asn = component_splittings(m);
    REQUIRE(asn.size() == 2);
    CHECK(asn[0].class_id == asn[1].class_id);
    CHECK_FALSE(is_weakly_g_connected(asn));

    // one fixed component is fine
    GCWComplex pt(catalog::z2(), {{0, 0}}, {}, {});
    CoverModel single(pt, {0});
    auto one_comp = component_splittings(single);
    REQUIRE(one_comp.size() == 1);
    CHECK(is_weakly_g_connected(one_comp));
}

TEST_CASE("pair splitting classes")
{
    auto m = square_model();
    const auto& g = m.extension().quotient;

    // degenerate P = G: D components coincide with C components
    auto pairs = pair_splitting_classes(m, Subgroup::whole(g));
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].pair_class_id != pairs[1].pair_class_id);
    CHECK(pairs[0].d_component_id == pairs[0].c_component_id);

    // P = 1: both C's sit in the one base component, distinguished by class
    auto pairs1 = pair_splitting_classes(m, Subgroup::trivial(g));
    REQUIRE(pairs1.size() == 2);
    CHECK(pairs1[0].d_component_id == pairs1[1].d_component_id);
    CHECK(pairs1[0].pair_class_id != pairs1[1].pair_class_id);

    // trivial kernel: all pairs land in one class
    auto conj = catalog::conjugation_circle();
    CoverModel mc(conj, {0});
    auto pc = pair_splitting_classes(mc, Subgroup::trivial(mc.extension().quotient));
    REQUIRE(pc.size() == 2);
    CHECK(pc[0].pair_class_id == pc[1].pair_class_id);
}

TEST_CASE("free kernel enforcement")
{
    CHECK_THROWS_WITH_AS(CoverModel(catalog::conjugation_circle(), {0, 1}),
                         doctest::Contains("freely"), Error);
}
