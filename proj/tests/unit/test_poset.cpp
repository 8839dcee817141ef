#include <gtest/gtest.h>

#include <random>

#include "kls/error.hpp"
#include "kls/poset.hpp"

using namespace kls;

TEST(Poset, CoversAndClosure) {
  Poset p = Poset::from_covers({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_TRUE(p.leq(0, 2));
  EXPECT_FALSE(p.leq(2, 0));
  EXPECT_EQ(p.covers().size(), 2u);
  EXPECT_EQ(p.num_intervals(), 6);
  EXPECT_EQ(p.slot(2, 0), -1);
}

TEST(Poset, RejectsCycles) {
  EXPECT_THROW(Poset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}), Error);
}

TEST(Poset, ValidateRank) {
  Poset b3 = boolean_algebra(3);
  EXPECT_TRUE(validate_rank(b3).ok);
  Poset b2 = boolean_algebra(2);
  auto bad = validate_rank(b2, {0, 2, 1, 2});
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.violation, std::make_pair(0, 1));
  EXPECT_TRUE(validate_rank(chain(3)).ok);
}

TEST(Poset, LowerEulerian) {
  for (int n = 0; n <= 6; ++n) EXPECT_TRUE(is_lower_eulerian(boolean_algebra(n)).ok) << n;
  Poset fan = Poset::from_covers({"0", "r1", "r2"}, {{0, 1}, {0, 2}});
  EXPECT_TRUE(is_lower_eulerian(fan).ok);
  EXPECT_FALSE(is_eulerian(fan).ok);
  auto c = is_lower_eulerian(chain(3));
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.witness, std::make_pair(0, 2));
}

TEST(Poset, Eulerian) {
  EXPECT_TRUE(is_eulerian(boolean_algebra(2)).ok);
  EXPECT_TRUE(is_eulerian(boolean_algebra(0)).ok);
  Poset b2 = boolean_algebra(2);
  auto minus_top = induced_subposet(b2, {0, 1, 2});
  EXPECT_FALSE(is_eulerian(minus_top.poset).ok);
  EXPECT_TRUE(is_lower_eulerian(minus_top.poset).ok);
}

TEST(Poset, BuildersAreEulerian) {
  for (int s = 0; s <= 5; ++s) EXPECT_TRUE(is_lower_eulerian(segment_subdivision(s)).ok);
  for (int k = 3; k <= 9; ++k) EXPECT_TRUE(is_eulerian(polygon(k)).ok);
  for (int d = 0; d <= 4; ++d) {
    EXPECT_TRUE(is_eulerian(cube_face_lattice(d)).ok) << d;
    EXPECT_TRUE(is_eulerian(simplex_face_lattice(d)).ok) << d;
    EXPECT_TRUE(is_eulerian(cross_polytope_face_lattice(d)).ok) << d;
  }
  EXPECT_EQ(cube_face_lattice(3).size(), 28);
  EXPECT_EQ(cross_polytope_face_lattice(3).size(), 28);
  EXPECT_TRUE(is_eulerian(semisuspension(boolean_algebra(2))).ok);
  Poset glued = glue_at_extremes(semisuspension(boolean_algebra(2)), semisuspension(boolean_algebra(2)));
  EXPECT_EQ(glued.size(), 10);
  EXPECT_TRUE(is_eulerian(glued).ok);
}

TEST(Poset, NaturalRank) {
  EXPECT_EQ(natural_rank(boolean_algebra(3)), (std::vector<int>{0, 1, 1, 2, 1, 2, 2, 3}));
  EXPECT_EQ(natural_rank(boolean_algebra(0)), std::vector<int>{0});
  EXPECT_EQ(natural_rank(chain(3)), (std::vector<int>{0, 1, 2}));
  // 0 < a < b < top and 0 < top directly is not ranked
  Poset unranked = Poset::from_covers({"0", "a", "b", "c", "top"}, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}});
  EXPECT_THROW(natural_rank(unranked), Error);
}

TEST(Poset, Join) {
  Poset b2 = boolean_algebra(2);
  EXPECT_EQ(join(b2, 1, 2), 3);
  EXPECT_EQ(join(b2, 0, 2), 2);
  Poset anti = Poset::from_covers({"a", "b"}, {});
  EXPECT_FALSE(join(anti, 0, 1).has_value());
  Poset two_tops = Poset::from_covers({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  EXPECT_FALSE(join(two_tops, 0, 1).has_value());
}

TEST(Poset, UpperSetAndComplement) {
  Poset b2 = boolean_algebra(2);
  EXPECT_EQ(upper_set(b2, 1), (std::vector<int>{1, 3}));
  EXPECT_EQ(lower_complement(b2, 1), (std::vector<int>{0, 2}));
  EXPECT_EQ(upper_set(b2, 0).size(), 4u);
  EXPECT_EQ(upper_set(b2, 3), std::vector<int>{3});
}

TEST(Poset, Products) {
  Poset b11 = direct_product(boolean_algebra(1), boolean_algebra(1));
  Poset b2 = boolean_algebra(2);
  // (i, j) -> bitmask i + 2 j is an isomorphism onto B_2
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int ma = (a / 2) + 2 * (a % 2), mb = (b / 2) + 2 * (b % 2);
      EXPECT_EQ(b11.leq(a, b), b2.leq(ma, mb));
    }
  EXPECT_EQ(*pyramid(boolean_algebra(2)).rank(), (std::vector<int>{0, 1, 1, 2, 1, 2, 2, 3}));
  Poset b0b = direct_product(boolean_algebra(0), polygon(4));
  EXPECT_TRUE(b0b == polygon(4).with_rank(b0b.rank()));
  EXPECT_TRUE(is_lower_eulerian(direct_product(segment_subdivision(1), polygon(3))).ok);
}

TEST(Poset, FixedSubposet) {
  Poset b2 = boolean_algebra(2);
  auto id = fixed_subposet(b2, {0, 1, 2, 3});
  EXPECT_EQ(id.poset.size(), 4);
  auto sw = fixed_subposet(b2, {0, 2, 1, 3});
  EXPECT_EQ(sw.to_parent, (std::vector<int>{0, 3}));
  EXPECT_EQ(sw.poset.covers().size(), 1u);
}

TEST(Poset, GluedSemisuspensionSwapIsNotRanked) {
  Poset s = semisuspension(boolean_algebra(2));
  Poset glued = glue_at_extremes(s, s);
  const int zhat2 = glued.find_label("zhat'");
  const int top2 = glued.find_label("{1,2}'");
  ASSERT_GE(zhat2, 0);
  ASSERT_GE(top2, 0);
  std::vector<int> w(static_cast<size_t>(glued.size()));
  for (int i = 0; i < glued.size(); ++i) w[static_cast<size_t>(i)] = i;
  std::swap(w[static_cast<size_t>(zhat2)], w[static_cast<size_t>(top2)]);
  ASSERT_TRUE(is_automorphism(glued, w));
  auto fixed = fixed_subposet(glued, w);
  EXPECT_THROW(natural_rank(fixed.poset), Error);
  EXPECT_FALSE(is_lower_eulerian(fixed.poset).ok);
}

TEST(PosetProperty, NaturalRankInvariantUnderAutomorphisms) {
  std::mt19937 rng(5);
  Poset cube = cube_face_lattice(3);
  auto rank = natural_rank(cube);
  // coordinate permutations and flips of the cube
  for (int it = 0; it < 20; ++it) {
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    int flips = static_cast<int>(rng() % 8);
    std::vector<int> w(static_cast<size_t>(cube.size()));
    w[0] = 0;
    for (int i = 1; i < cube.size(); ++i) {
      std::string word = cube.label(i), image(3, ' ');
      for (int k = 0; k < 3; ++k) {
        char c = word[static_cast<size_t>(k)];
        if ((flips >> k & 1) && c != '*') c = c == '0' ? '1' : '0';
        image[static_cast<size_t>(perm[static_cast<size_t>(k)])] = c;
      }
      w[static_cast<size_t>(i)] = cube.find_label(image);
    }
    ASSERT_TRUE(is_automorphism(cube, w));
    for (int i = 0; i < cube.size(); ++i) EXPECT_EQ(rank[static_cast<size_t>(i)], rank[static_cast<size_t>(w[static_cast<size_t>(i)])]);
  }
}

TEST(PosetProperty, ProductsOfLowerEulerianAreLowerEulerian) {
  std::vector<Poset> corpus{boolean_algebra(1), boolean_algebra(2), segment_subdivision(0), segment_subdivision(2), polygon(3), chain(2)};
  for (const auto& a : corpus)
    for (const auto& b : corpus) EXPECT_TRUE(is_lower_eulerian(direct_product(a, b)).ok);
}
