#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "catalog.hpp"
#include "eqfix/chain.hpp"
#include "eqfix/error.hpp"
#include "eqfix/oliver.hpp"

using namespace eqfix;
using eqfix::Int;

namespace {

bool section_cyclic(const Subgroup& h, const Subgroup& p)
{
    // |H/P| cyclic iff some coset has order |H|/|P| in the quotient; test
    // directly with coset arithmetic instead of building the table.
    const auto& g = *h.parent();
    const int target = h.size() / p.size();
    for (int x : h.elements()) {
        int k = 1;
        int y = x;
        while (!p.contains(y)) {
            y = g.mul(y, x);
            ++k;
        }
        if (k == target)
            return true;
    }
    return false;
}

// Independent chain-existence scan used as an oracle against classify():
// straight double loop over the subgroup lattice, with its own predicate
// evaluation order.
bool chain_exists(const GroupPtr& g)
{
    auto subs = all_subgroups(g);
    for (const auto& h : subs) {
        if (!h.is_normal_in_parent())
            continue;
        if (!prime_power_status(g->order() / h.size()).prime_power_or_trivial())
            continue;
        for (const auto& p : subs) {
            if (!h.contains(p) || !p.is_normal_in(h))
                continue;
            if (!prime_power_status(p.size()).prime_power_or_trivial())
                continue;
            if (section_cyclic(h, p))
                return true;
        }
    }
    return false;
}

bool zero_witness_exists(const GroupPtr& g)
{
    for (const auto& p : all_subgroups(g)) {
        if (!prime_power_status(p.size()).prime_power_or_trivial())
            continue;
        if (!p.is_normal_in_parent())
            continue;
        auto [q, proj] = quotient(g, p);
        if (is_cyclic(*q))
            return true;
    }
    return false;
}

OliverTag oracle_tag(const GroupPtr& g)
{
    if (zero_witness_exists(g))
        return OliverTag::Zero;
    return chain_exists(g) ? OliverTag::NontrivialUnknown : OliverTag::One;
}

}  // namespace

TEST_CASE("classification of the named groups")
{
    CHECK(classify(catalog::z6()).tag == OliverTag::Zero);
    CHECK(classify(catalog::s3()).tag == OliverTag::Zero);
    CHECK(classify(catalog::a5()).tag == OliverTag::One);

    auto s4 = classify(catalog::s4());
    CHECK(s4.tag == OliverTag::NontrivialUnknown);
    REQUIRE(s4.witness_p.has_value());
    REQUIRE(s4.witness_h.has_value());
    CHECK(s4.witness_p->size() == 4);   // V4
    CHECK(s4.witness_h->size() == 12);  // A4
    CHECK(s4.witness_p->is_normal_in_parent());

    CHECK_THROWS_AS(classify(catalog::z4()), Error);
    CHECK_THROWS_AS(classify(FiniteGroup::trivial()), Error);
}

TEST_CASE("classification matches the exhaustive oracle")
{
    for (const auto& g : {catalog::z6(), catalog::z12(), catalog::z15(), catalog::z30(),
                          catalog::s3(), catalog::s4(), catalog::a4(), catalog::a5(),
                          catalog::dihedral(5), catalog::dihedral(6)}) {
        CHECK(classify(g).tag == oracle_tag(g));
    }
}

TEST_CASE("every Zero group also has the chain form")
{
    // Zero and One are mutually exclusive: a Zero witness P gives the chain
    // P <| G <| G.
    for (const auto& g : {catalog::z6(), catalog::z12(), catalog::z15(), catalog::z30(),
                          catalog::s3(), catalog::a4(), catalog::dihedral(5)}) {
        REQUIRE(classify(g).tag == OliverTag::Zero);
        CHECK(chain_exists(g));
    }
}

TEST_CASE("classification is relabeling invariant")
{
    std::mt19937 rng(11);
    for (const auto& g :
         {catalog::z6(), catalog::s3(), catalog::s4(), catalog::a5(), catalog::dihedral(6)}) {
        const auto expect = classify(g).tag;
        for (int trial = 0; trial < 20; ++trial)
            CHECK(classify(catalog::relabel(g, rng)).tag == expect);
    }
}

TEST_CASE("sylow normalizer indices")
{
    using pairs = std::vector<std::pair<long long, long long>>;
    CHECK(sylow_normalizer_indices(catalog::s3()) == pairs{{2, 3}, {3, 1}});
    CHECK(sylow_normalizer_indices(catalog::a5()) == pairs{{2, 5}, {3, 10}, {5, 6}});
    CHECK(sylow_normalizer_indices(catalog::z6()) == pairs{{2, 1}, {3, 1}});
}

TEST_CASE("degree zero coefficients")
{
    auto check_solution = [](const std::vector<long long>& m) {
        auto a = degree_zero_coefficients(m);
        REQUIRE(a.size() == m.size());
        Int total = 1;  // exact accumulation; the products can be large
        for (size_t i = 0; i < m.size(); ++i)
            total += Int(a[i]) * m[i];
        CHECK(total == 0);
    };
    check_solution({5, 10, 6});
    check_solution({1});
    check_solution({2, 3});

    CHECK(degree_zero_coefficients({1}) == std::vector<long long>{-1});
    CHECK_THROWS_AS(degree_zero_coefficients({4, 6}), Error);
    CHECK_THROWS_AS(degree_zero_coefficients({}), Error);

    // substitution property over random coprime lists
    std::mt19937 rng(23);
    std::uniform_int_distribution<long long> val(1, 1000000);
    std::uniform_int_distribution<int> len(1, 5);
    int done = 0;
    while (done < 100) {
        std::vector<long long> m(len(rng));
        for (auto& v : m)
            v = val(rng);
        long long g = 0;
        for (long long v : m)
            g = std::gcd(g, v);
        if (g != 1)
            continue;
        check_solution(m);
        ++done;
    }
}

TEST_CASE("catalog groups feed the degree-zero construction")
{
    // Coprimality of the normalizer indices and exact solvability, for
    // every non-prime-power catalog group of order <= 100.
    for (const auto& g : {catalog::z6(), catalog::z12(), catalog::z15(), catalog::z30(),
                          catalog::s3(), catalog::s4(), catalog::a4(), catalog::a5(),
                          catalog::dihedral(5), catalog::dihedral(6)}) {
        REQUIRE(g->order() <= 100);
        REQUIRE_FALSE(prime_power_status(g->order()).prime_power_or_trivial());
        auto idx = sylow_normalizer_indices(g);
        std::vector<long long> m;
        long long gcd_all = 0;
        for (auto [p, i] : idx) {
            m.push_back(i);
            gcd_all = std::gcd(gcd_all, i);
        }
        CHECK(gcd_all == 1);
        auto a = degree_zero_coefficients(m);
        long long total = 1;
        for (size_t i = 0; i < m.size(); ++i)
            total += a[i] * m[i];
        CHECK(total == 0);
    }
}

TEST_CASE("effective modulus")
{
    auto zero = classify(catalog::z6());
    auto one = classify(catalog::a5());
    auto unk = classify(catalog::s4());

    CHECK(effective_modulus(zero, std::nullopt).value == 0);
    CHECK(effective_modulus(one, std::nullopt).value == 1);
    CHECK_FALSE(effective_modulus(unk, std::nullopt).is_known());
    CHECK(effective_modulus(unk, 4).value == 4);
    CHECK_THROWS_AS(effective_modulus(zero, 2), Error);
    CHECK_THROWS_AS(effective_modulus(one, 0), Error);

    CHECK(square_free_modulus(zero).value == 0);
    CHECK(square_free_modulus(one).value == 1);
    CHECK_FALSE(square_free_modulus(unk).is_known());
}
