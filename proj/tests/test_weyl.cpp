#include <map>
#include <set>

#include <gtest/gtest.h>

#include "chev/weyl.h"

using namespace chev;

namespace
{

// Brute force closure of the simple reflections; only for small groups.
std::vector<WeylElement> all_elements(Weyl const &W)
{
  std::vector<WeylElement> res{W.identity()};
  std::set<std::vector<std::uint8_t>> seen{res[0].perm};
  for (std::size_t k = 0; k < res.size(); ++k)
    for (int i = 0; i < W.rank(); ++i) {
      auto y = W.mul_s(res[k], i);
      if (seen.insert(y.perm).second)
        res.push_back(y);
    }
  return res;
}

// Minimal number of s_i among all reduced words, by listing every
// reduced word.
int occurrences_brute(Weyl const &W, WeylElement const &w, int i)
{
  if (W.length(w) == 0)
    return 0;
  int best = 1 << 20;
  for (int j = 0; j < W.rank(); ++j)
    if (W.right_descent(w, j))
      best = std::min(best, occurrences_brute(W, W.mul_s(w, j), i) + (j == i));
  return best;
}

} // namespace

TEST(Weyl, GroupOrders)
{
  std::vector<std::pair<std::string, std::size_t>> cases = {
    {"G2", 12}, {"F4", 1152}};
  for (auto const &[name, order] : cases) {
    RootSystem rs(RootSystemType::parse(name));
    Weyl W(rs);
    EXPECT_EQ(all_elements(W).size(), order) << name;
    EXPECT_EQ(W.min_coset_reps(0).size(), order) << name;
  }
  RootSystem e6(RootSystemType::parse("E6"));
  EXPECT_EQ(Weyl(e6).min_coset_reps(0).size(), 51840u);
}

TEST(Weyl, LongestElement)
{
  for (auto name : {"E6", "E7", "E8", "F4", "G2"}) {
    RootSystem rs(RootSystemType::parse(name));
    Weyl W(rs);
    EXPECT_EQ(W.length(W.w0()), rs.num_pos()) << name;
    for (int a = 0; a < rs.num_pos(); ++a)
      EXPECT_FALSE(rs.positive(W.w0()(a)));
  }
}

TEST(Weyl, Opposition)
{
  RootSystem e6(RootSystemType::parse("E6"));
  Weyl W(e6);
  std::vector<int> expect = {5, 1, 4, 3, 2, 0};
  EXPECT_EQ(W.opposition_map(), expect);
  for (auto name : {"E7", "E8", "F4", "G2"}) {
    RootSystem rs(RootSystemType::parse(name));
    Weyl V(rs);
    for (int i = 0; i < rs.rank(); ++i)
      EXPECT_EQ(V.opposition_map()[i], i) << name;
  }
}

TEST(Weyl, ReflectionLengths)
{
  RootSystem e7(RootSystemType::parse("E7"));
  Weyl W(e7);
  EXPECT_EQ(W.length(W.reflection(e7.highest_root())), 33);
  RootSystem e8(RootSystemType::parse("E8"));
  Weyl V(e8);
  EXPECT_EQ(V.length(V.reflection(e8.highest_root())), 57);
}

TEST(Weyl, WordsRoundTrip)
{
  RootSystem f4(RootSystemType::parse("F4"));
  Weyl W(f4);
  for (auto const &w : all_elements(W)) {
    auto word = W.reduced_word(w);
    EXPECT_EQ(int(word.size()), W.length(w));
    EXPECT_EQ(W.from_word(word), w);
    EXPECT_EQ(W.from_key(W.key(w)), w);
    EXPECT_EQ(W.length(W.inverse(w)), W.length(w));
    EXPECT_EQ(int(W.inversion_set(w).size()), W.length(w));
  }
}

TEST(Weyl, InversionSetDefinition)
{
  RootSystem g2(RootSystemType::parse("G2"));
  Weyl W(g2);
  for (auto const &w : all_elements(W)) {
    auto wi = W.inverse(w);
    std::vector<int> expect;
    for (int a = 0; a < g2.num_pos(); ++a)
      if (!g2.positive(wi(a)))
        expect.push_back(a);
    EXPECT_EQ(W.inversion_set(w), expect);
  }
}

TEST(Weyl, MinOccurrencesMatchesBruteForce)
{
  RootSystem f4(RootSystemType::parse("F4"));
  Weyl W(f4);
  for (auto const &w : all_elements(W)) {
    if (W.length(w) > 10)
      continue;
    for (int i = 0; i < 4; ++i)
      EXPECT_EQ(W.min_occurrences(w, i), occurrences_brute(W, w, i));
  }
  RootSystem g2(RootSystemType::parse("G2"));
  Weyl V(g2);
  for (auto const &w : all_elements(V))
    for (int i = 0; i < 2; ++i)
      EXPECT_EQ(V.min_occurrences(w, i), occurrences_brute(V, w, i));
}

TEST(Weyl, DoubleCosetRepresentativesAreMinimal)
{
  RootSystem f4(RootSystemType::parse("F4"));
  Weyl W(f4);
  NodeSet J = node_set({1, 2}), K = node_set({4});
  auto reps = W.min_double_coset_reps(J, K);

  // brute force: group all elements by double coset and take minima
  auto elems = all_elements(W);
  std::map<std::vector<std::uint8_t>, int> best;
  for (auto const &w : elems) {
    auto r = W.double_coset_rep(w, J, K);
    auto it = best.find(r.perm);
    if (it == best.end() || W.length(w) < it->second)
      best[r.perm] = W.length(w);
  }
  EXPECT_EQ(reps.size(), best.size());
  for (auto const &r : reps)
    EXPECT_EQ(W.length(r), best.at(W.double_coset_rep(r, J, K).perm));
}

TEST(Weyl, DemazureProduct)
{
  RootSystem g2(RootSystemType::parse("G2"));
  Weyl W(g2);
  auto elems = all_elements(W);
  for (auto const &x : elems)
    for (auto const &y : elems) {
      auto z = W.demazure(x, y);
      EXPECT_GE(W.length(z), std::max(W.length(x), W.length(y)));
      EXPECT_LE(W.length(z), W.length(x) + W.length(y));
    }
  auto s = W.s(0);
  EXPECT_EQ(W.demazure(s, s), s);
  EXPECT_EQ(W.demazure(W.w0(), W.w0()), W.w0());
}

TEST(Weyl, Orbits)
{
  RootSystem e7(RootSystemType::parse("E7"));
  Weyl W(e7);
  auto orb = W.orbit(all_nodes(7), e7.simple(0));
  EXPECT_EQ(orb.size(), 126u);
}
