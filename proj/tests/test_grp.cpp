#include <gtest/gtest.h>

#include <set>

#include "heisidem/grp.hpp"

using namespace heisidem::grp;
using heisidem::exactnum::QmodZ;

namespace {

// Independent oracle: 3x3 unitriangular matrices multiplied as matrices.
struct Mat3 {
    long x, y, z;
};
Mat3 matmul(Mat3 a, Mat3 b, long m) {
    // [[1,x,z],[0,1,y],[0,0,1]]
    return {(a.x + b.x) % m, (a.y + b.y) % m, (a.z + b.z + a.x * b.y) % m};
}
Element heis_index(Mat3 a, long m) { return static_cast<Element>((a.x * m + a.y) * m + a.z); }

}  // namespace

TEST(Heisenberg, OrdersAndCenters) {
    EXPECT_EQ(heisenberg(3)->order(), 27u);
    EXPECT_EQ(heisenberg(9)->order(), 729u);
    auto g4 = heisenberg(4);
    EXPECT_EQ(g4->order(), 64u);
    EXPECT_EQ(g4->designated().at("center").size(), 4u);
    EXPECT_THROW(heisenberg(6), std::invalid_argument);
    EXPECT_THROW(heisenberg(1), std::invalid_argument);
}

TEST(Heisenberg, MatchesMatrixOracle) {
    for (long m : {2L, 3L, 4L, 5L}) {
        auto G = heisenberg(m);
        for (long a = 0; a < m * m * m; ++a)
            for (long b = 0; b < m * m * m; ++b) {
                Mat3 A{a / (m * m), (a / m) % m, a % m}, B{b / (m * m), (b / m) % m, b % m};
                ASSERT_EQ(G->mul(static_cast<Element>(a), static_cast<Element>(b)), heis_index(matmul(A, B, m), m));
            }
        EXPECT_FALSE(G->is_abelian());
        EXPECT_TRUE(SubgroupRef::designated(G, "center").is_normal_in(SubgroupRef::whole(G)));
    }
}

TEST(Commutator, Examples) {
    auto G = heisenberg(3);
    const Element x = heis_index({1, 0, 0}, 3), y = heis_index({0, 1, 0}, 3);
    for (Element g = 0; g < G->order(); ++g) EXPECT_EQ(commutator(*G, g, G->id()), G->id());
    // h g h^-1 g^-1 with g = x, h = y: matrix oracle gives z^{-1}
    EXPECT_EQ(commutator(*G, x, y), heis_index({0, 0, 2}, 3));
    EXPECT_EQ(commutator(*G, y, x), heis_index({0, 0, 1}, 3));
    auto C = cyclic(6);
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) EXPECT_EQ(commutator(*C, a, b), C->id());
}

TEST(Commutator, CocycleIdentity) {
    // c_{g1 g2}(h) = c_{g1}(h) * g1 c_{g2}(h) g1^{-1}, exhaustive on Heis(3) x| sigma
    auto base = heisenberg(3);
    auto G = semidirect(base, {heisenberg_automorphism(3, "identity"), heisenberg_automorphism(3, "negate_xy")});
    for (Element g1 = 0; g1 < G->order(); ++g1)
        for (Element g2 = 0; g2 < G->order(); ++g2)
            for (Element h = 0; h < G->order(); ++h)
                ASSERT_EQ(commutator(*G, G->mul(g1, g2), h),
                          G->mul(commutator(*G, g1, h), G->conj(g1, commutator(*G, g2, h))));
}

TEST(TableGroup, RejectsBrokenTables) {
    // not a Latin square
    EXPECT_THROW(TableGroup::from_table({{0, 1}, {1, 1}}), std::invalid_argument);
    // Latin square without associativity: a loop of order 5
    std::vector<std::vector<Element>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
        TableGroup::from_table(loop);
        FAIL() << "non-associative loop accepted";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("associative"), std::string::npos);
    }
}

TEST(TableGroup, LightTestAgreesWithBruteForce) {
    std::vector<std::vector<Element>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    std::vector<Element> flat;
    for (auto& r : loop) flat.insert(flat.end(), r.begin(), r.end());
    EXPECT_TRUE(associativity_witness(5, flat).has_value());
    for (auto G : {heisenberg(3), cyclic(7), direct_product(cyclic(2), cyclic(4))}) {
        EXPECT_FALSE(associativity_witness_bruteforce(*G).has_value());
        EXPECT_TRUE(G->associativity_checked());
    }
}

TEST(Semidirect, Examples) {
    auto base = heisenberg(3);
    auto sigma = heisenberg_automorphism(3, "negate_xy");
    auto G = semidirect(base, {heisenberg_automorphism(3, "identity"), sigma});
    EXPECT_EQ(G->order(), 54u);
    auto B = SubgroupRef::designated(G, "base");
    EXPECT_TRUE(B.is_normal_in(SubgroupRef::whole(G)));
    EXPECT_EQ(quotient_group(B).group->order(), 2u);

    // trivial Gamma gives the base back
    auto same = semidirect(base, {heisenberg_automorphism(3, "identity")});
    for (Element a = 0; a < 27; ++a)
        for (Element b = 0; b < 27; ++b) ASSERT_EQ(same->mul(a, b), base->mul(a, b));

    // Aut(Z/3) has order 2, so a three-element action needs a larger base: Z/7 with x -> 2x
    auto c7 = cyclic(7);
    std::vector<Element> sq(7), fo(7), id(7);
    for (Element i = 0; i < 7; ++i) {
        id[i] = i;
        sq[i] = (2 * i) % 7;
        fo[i] = (4 * i) % 7;
    }
    auto F21 = semidirect(c7, {id, sq, fo});
    EXPECT_EQ(F21->order(), 21u);
    EXPECT_FALSE(F21->is_abelian());

    auto c3 = cyclic(3);
    auto S3 = semidirect(c3, {{0, 1, 2}, {0, 2, 1}});
    EXPECT_EQ(S3->order(), 6u);
    // a list repeating a map is refused
    EXPECT_THROW(semidirect(c3, {{0, 1, 2}, {0, 2, 1}, {0, 2, 1}}), std::invalid_argument);
    EXPECT_THROW(semidirect(c3, {{0, 1, 2}, {1, 2, 0}}), std::invalid_argument);  // translation, not an automorphism
    EXPECT_THROW(semidirect(c7, {id, sq}), std::invalid_argument);                // not closed
}

TEST(Semidirect, SwapNegatesTheCenter) {
    auto tau = heisenberg_automorphism(3, "swap");
    auto G = semidirect(heisenberg(3), {heisenberg_automorphism(3, "identity"), tau});
    EXPECT_EQ(G->order(), 54u);
    const Element z = heis_index({0, 0, 1}, 3);
    EXPECT_EQ(tau[z], heis_index({0, 0, 2}, 3));
}

TEST(Quotient, HeisenbergModCenter) {
    auto G = heisenberg(3);
    auto A = AbelianQuotient::make(SubgroupRef::whole(G), SubgroupRef::designated(G, "center"));
    EXPECT_EQ(A->size(), 9u);
    EXPECT_EQ(A->invariant_factors(), (std::vector<std::int64_t>{3, 3}));
    auto chars = characters(*A);
    EXPECT_EQ(chars.size(), 9u);
    std::set<std::vector<QmodZ>> distinct;
    for (auto& c : chars) distinct.insert(c.values);
    EXPECT_EQ(distinct.size(), 9u);
}

TEST(Quotient, TrivialAndCyclic) {
    auto G = heisenberg(3);
    auto H = SubgroupRef::whole(G);
    auto A = AbelianQuotient::make(H, H);
    EXPECT_EQ(A->size(), 1u);
    EXPECT_TRUE(A->invariant_factors().empty());
    EXPECT_EQ(characters(*A).size(), 1u);

    auto C9 = cyclic(9);
    Element three = 3;
    auto A2 = AbelianQuotient::make(SubgroupRef::whole(C9), SubgroupRef::generated(C9, std::span(&three, 1)));
    EXPECT_EQ(A2->invariant_factors(), (std::vector<std::int64_t>{3}));
}

TEST(Quotient, RejectsNonNormalAndNonAbelian) {
    auto S3 = semidirect(cyclic(3), {{0, 1, 2}, {0, 2, 1}});
    Element refl = 3;
    auto R = SubgroupRef::generated(S3, std::span(&refl, 1));
    EXPECT_THROW(AbelianQuotient::make(SubgroupRef::whole(S3), R), std::invalid_argument);
    EXPECT_THROW(AbelianQuotient::make(SubgroupRef::whole(S3), SubgroupRef::trivial(S3)), std::invalid_argument);
}

TEST(QuotientProperty, CharacterGroupMatchesInvariantFactors) {
    auto G = heisenberg(9);
    auto Z = SubgroupRef::designated(G, "center");
    // N = 3 * center (order 3): H/N has exponent 9 and order 243
    std::vector<Element> gens{static_cast<Element>(3)};
    auto N = SubgroupRef::generated(G, gens);
    auto A = AbelianQuotient::make(Z, N);
    EXPECT_EQ(A->invariant_factors(), (std::vector<std::int64_t>{3}));

    auto P = direct_product(cyclic(4), direct_product(cyclic(2), cyclic(6)));
    auto AP = AbelianQuotient::make(SubgroupRef::whole(P), SubgroupRef::trivial(P));
    EXPECT_EQ(AP->invariant_factors(), (std::vector<std::int64_t>{2, 2, 12}));
    auto chars = characters(*AP);
    ASSERT_EQ(chars.size(), 48u);
    std::set<std::vector<QmodZ>> all;
    for (auto& c : chars) all.insert(c.values);
    EXPECT_EQ(all.size(), 48u);
    // closed under pointwise addition and each is multiplicative
    for (auto& a : chars) {
        for (std::size_t x = 0; x < AP->size(); ++x)
            for (std::size_t y = 0; y < AP->size(); ++y) ASSERT_EQ(a[AP->mul(x, y)], a[x] + a[y]);
        for (auto& b : chars) {
            std::vector<QmodZ> s(a.values.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = a[i] + b[i];
            ASSERT_TRUE(all.count(s));
        }
    }
    for (std::size_t c = 0; c < AP->size(); ++c) ASSERT_EQ(AP->from_coords(AP->coords(c)), c);
}

TEST(Character, FromGenerators) {
    auto G = heisenberg(3);
    auto Z = SubgroupRef::designated(G, "center");
    Element z = 1;
    QmodZ third(1, 3);
    auto chi = character_from_generators(Z, std::span(&z, 1), std::span(&third, 1));
    EXPECT_EQ(chi.order(), 3);
    EXPECT_FALSE(multiplicativity_witness(Z, chi).has_value());
    QmodZ half(1, 2);
    EXPECT_THROW(character_from_generators(Z, std::span(&z, 1), std::span(&half, 1)), std::invalid_argument);
    Element id = 0;
    EXPECT_THROW(character_from_generators(Z, std::span(&id, 1), std::span(&third, 1)), std::invalid_argument);
}

TEST(Automorphisms, ClosureOfNegation) {
    auto base = heisenberg(3);
    auto all = automorphism_closure(*base, {heisenberg_automorphism(3, "negate_xy")});
    EXPECT_EQ(all.size(), 2u);
    EXPECT_EQ(semidirect(base, all)->order(), 54u);
}
