#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "chev/field.h"
#include "chev/oppo.h"

using namespace chev;

namespace
{

Context const &ctx(char const *name)
{ return context(RootSystemType::parse(name)); }

std::vector<std::string> strs(RootSystem const &rs, std::vector<int> const &v)
{
  std::vector<std::string> res;
  for (int a : v)
    res.push_back(rs.str(a));
  return res;
}

// |Phi^+| minus the number of positive roots supported on S\J
int cap_oracle(RootSystem const &rs, NodeSet J)
{
  int inside = 0;
  for (int a = 0; a < rs.num_pos(); ++a)
    if ((rs.support(a) & J) == 0)
      ++inside;
  return rs.num_pos() - inside;
}

int rank_of(RootSystem const &rs, std::vector<int> const &roots)
{
  std::vector<std::vector<double>> m;
  for (int a : roots) {
    std::vector<double> v;
    for (int i = 0; i < rs.rank(); ++i)
      v.push_back(rs.coeff(a, i));
    m.push_back(v);
  }
  int r = 0;
  for (int c = 0; c < rs.rank() && r < int(m.size()); ++c) {
    int p = r;
    while (p < int(m.size()) && std::abs(m[p][c]) < 1e-9)
      ++p;
    if (p == int(m.size()))
      continue;
    std::swap(m[p], m[r]);
    for (int k = 0; k < int(m.size()); ++k)
      if (k != r) {
        double f = m[k][c] / m[r][c];
        for (int j = 0; j < rs.rank(); ++j)
          m[k][j] -= f * m[r][j];
      }
    ++r;
  }
  return r;
}

// (rank, positive roots) of each irreducible piece, found by connecting
// non-orthogonal roots directly
std::multiset<std::pair<int, int>> shape_oracle(RootSystem const &rs,
                                                std::vector<int> const &pos)
{
  int n = int(pos.size());
  std::vector<int> comp(n, -1);
  std::multiset<std::pair<int, int>> res;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> members{s};
    comp[s] = s;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int j = 0; j < n; ++j)
        if (comp[j] < 0 && rs.inner(pos[members[k]], pos[j]) != 0) {
          comp[j] = s;
          members.push_back(j);
        }
    std::vector<int> roots;
    for (int m : members)
      roots.push_back(pos[m]);
    res.insert({rank_of(rs, roots), int(roots.size())});
  }
  return res;
}

std::multiset<std::pair<int, int>> shape_of_label(std::string const &label)
{
  std::multiset<std::pair<int, int>> res;
  std::size_t k = 0;
  while (k < label.size()) {
    char s = label[k++];
    int r = 0;
    while (k < label.size() && std::isdigit(label[k]))
      r = 10 * r + (label[k++] - '0');
    if (k < label.size() && label[k] == 'x')
      ++k;
    int n = 0;
    switch (s) {
    case 'A': n = r * (r + 1) / 2; break;
    case 'B':
    case 'C': n = r * r; break;
    case 'D': n = r * (r - 1); break;
    case 'E': n = r == 6 ? 36 : r == 7 ? 63 : 120; break;
    case 'F': n = 24; break;
    case 'G': n = 6; break;
    }
    res.insert({r, n});
  }
  return res;
}

} // namespace

TEST(Catalogue, Counts)
{
  std::map<std::string, std::size_t> want = {
    {"E6", 6}, {"E7", 6}, {"E8", 5}, {"F4", 5}, {"G2", 4}};
  for (auto const &[name, n] : want) {
    auto t = RootSystemType::parse(name);
    EXPECT_EQ(catalogue(t).size(), n) << name;
  }
  EXPECT_EQ(catalogue(RootSystemType::parse("F4"), true).size(), 6u);
  EXPECT_EQ(catalogue(RootSystemType::parse("G2"), true).size(), 5u);
  EXPECT_FALSE(find_diagram(RootSystemType::parse("G2"), "2G2;1").computable);
  EXPECT_THROW(find_diagram(RootSystemType::parse("E7"), "E7;5"), ParseError);
}

TEST(Catalogue, CappedDisplacements)
{
  std::map<std::string, int> want = {
    {"2E6;1", 21}, {"2E6;2", 30},   {"2E6;4", 36}, {"E7;1", 33},
    {"E7;2", 50},  {"E7;3", 51},    {"E7;4", 60},  {"E7;7", 63},
    {"E8;1", 57},  {"E8;2", 90},    {"E8;4", 108}, {"E8;8", 120},
    {"F4;1^1", 15}, {"F4;1^4", 15}, {"F4;2", 20},  {"F4;4", 24},
    {"G2;1^1", 5}, {"G2;1^2", 5},   {"G2;2", 6}};
  for (auto name : {"E6", "E7", "E8", "F4", "G2"}) {
    auto const &c = ctx(name);
    for (auto const &d : catalogue(c.rs.type())) {
      int cap = capped_displacement(c.weyl, d);
      EXPECT_EQ(cap, cap_oracle(c.rs, d.encircled)) << d.name;
      if (want.count(d.name))
        EXPECT_EQ(cap, want[d.name]) << d.name;
    }
  }
}

TEST(Catalogue, TwistedE6Flags)
{
  auto t = RootSystemType::parse("E6");
  auto d = find_diagram(t, "E6;2");
  EXPECT_FALSE(d.type_preserving);
  EXPECT_EQ(d.encircled, node_set({1, 6}));
  EXPECT_EQ(find_diagram(t, "2E6;2").encircled, node_set({1, 2, 6}));
  EXPECT_EQ(diagram_with_nodes(t, node_set({2}))->name, "2E6;1");
  EXPECT_FALSE(diagram_with_nodes(t, node_set({1})));
}

TEST(Polar, Sequences)
{
  auto const &e8 = ctx("E8");
  auto seq = polar_closed_sequence(e8.rs, find_diagram(e8.rs.type(), "E8;4"));
  ASSERT_TRUE(seq);
  EXPECT_EQ(strs(e8.rs, *seq), (std::vector<std::string>{
                                  "23465432", "22343210", "01122210",
                                  "00000010"}));

  auto const &e6 = ctx("E6");
  seq = polar_closed_sequence(e6.rs, find_diagram(e6.rs.type(), "2E6;4"));
  ASSERT_TRUE(seq);
  EXPECT_EQ(strs(e6.rs, *seq), (std::vector<std::string>{
                                  "122321", "101111", "001110", "000100"}));
  EXPECT_FALSE(polar_closed_sequence(e6.rs, find_diagram(e6.rs.type(), "E6;2")));

  auto const &f4 = ctx("F4");
  EXPECT_FALSE(polar_closed_sequence(f4.rs, find_diagram(f4.rs.type(), "F4;1^4")));
  auto dual = dual_polar_closed_sequence(f4.rs, find_diagram(f4.rs.type(), "F4;1^4"));
  ASSERT_TRUE(dual);
  EXPECT_EQ(strs(f4.rs, *dual), std::vector<std::string>{"1232"});
  dual = dual_polar_closed_sequence(f4.rs, find_diagram(f4.rs.type(), "F4;2"));
  ASSERT_TRUE(dual);
  EXPECT_EQ(strs(f4.rs, *dual), (std::vector<std::string>{"1232", "1110"}));

  auto const &g2 = ctx("G2");
  EXPECT_FALSE(polar_closed_sequence(g2.rs, find_diagram(g2.rs.type(), "G2;1^1")));
  dual = dual_polar_closed_sequence(g2.rs, find_diagram(g2.rs.type(), "G2;1^1"));
  ASSERT_TRUE(dual);
  EXPECT_EQ(strs(g2.rs, *dual), std::vector<std::string>{"21"});
}

// The reflections in a polar sequence multiply to w_{S\J} w_0, lengths adding.
TEST(Polar, ReflectionProductIsCellWitness)
{
  for (auto name : {"E6", "E7", "E8", "F4", "G2"}) {
    auto const &c = ctx(name);
    NodeSet S = all_nodes(c.rs.rank());
    for (auto const &d : catalogue(c.rs.type())) {
      auto seq = polar_closed_sequence(c.rs, d);
      if (!seq)
        continue;
      WeylElement w = c.weyl.identity();
      int sum = 0;
      for (int a : *seq) {
        w = c.weyl.mul(w, c.weyl.reflection(a));
        sum += c.weyl.length(c.weyl.reflection(a));
      }
      EXPECT_EQ(w, c.weyl.mul(c.weyl.longest(S & ~d.encircled), c.weyl.w0()))
        << d.name;
      EXPECT_EQ(sum, c.weyl.length(w)) << d.name;
    }
  }
}

TEST(Polar, GenericUnipotent)
{
  auto const &f4 = ctx("F4");
  auto d = find_diagram(f4.rs.type(), "F4;2");
  auto w = generic_unipotent<Fp<3>>(f4.rs, d, {Fp<3>::from_int(1),
                                               Fp<3>::from_int(2)});
  EXPECT_EQ(w.size(), 2u);
  EXPECT_THROW(generic_unipotent<Fp<3>>(f4.rs, d, {Fp<3>::from_int(1)}),
               DimensionMismatch);
  EXPECT_THROW(generic_unipotent<Fp<3>>(f4.rs, d, {Fp<3>::from_int(1),
                                                   Fp<3>::from_int(0)}),
               NotGeneric);
  EXPECT_THROW(generic_unipotent<Fp<3>>(
                 f4.rs, find_diagram(f4.rs.type(), "F4;1^4"),
                 {Fp<3>::from_int(1)}),
               NotGeneric);
}

TEST(Weyl, FactsUsedByBounds)
{
  auto const &e6 = ctx("E6");
  EXPECT_EQ(e6.rs.closure_up({e6.rs.simple(0)}).size(), 16u);
  auto const &e8 = ctx("E8");
  EXPECT_EQ(e8.rs.closure_up({e8.rs.simple(7)}).size(), 57u);
  auto const &g2 = ctx("G2");
  EXPECT_EQ(g2.weyl.length(g2.weyl.reflection(g2.rs.highest_root())), 5);
  auto const &e7 = ctx("E7");
  NodeSet J = all_nodes(7) & ~node_bit(6);
  EXPECT_EQ(e7.weyl.min_double_coset_reps(J, J).size(), 4u);
  WeylElement x = e7.weyl.mul(e7.weyl.w0(), e7.weyl.longest(node_set({1, 2, 3, 4, 5, 6})));
  EXPECT_EQ(e7.weyl.min_occurrences(x, 6), 3);
  auto const &f4 = ctx("F4");
  NodeSet C3 = node_set({2, 3, 4});
  EXPECT_EQ(f4.weyl.mul(f4.weyl.w0(), f4.weyl.longest(C3)),
            f4.weyl.reflection(f4.rs.highest_root()));
}

TEST(WeylExpr, Parses)
{
  auto const &e7 = ctx("E7");
  auto const &W = e7.weyl;
  EXPECT_EQ(weyl_expr(W, "s3 s1"), W.mul(W.s(2), W.s(0)));
  EXPECT_EQ(weyl_expr(W, "w0"), W.w0());
  EXPECT_EQ(weyl_expr(W, "w[123456]"), W.longest(node_set({1, 2, 3, 4, 5, 6})));
  EXPECT_EQ(weyl_expr(W, "r2234321"), W.reflection(e7.rs.highest_root()));
  EXPECT_EQ(weyl_expr(W, ""), W.identity());
  EXPECT_THROW(weyl_expr(W, "s9"), ParseError);
  EXPECT_THROW(weyl_expr(W, "q1"), ParseError);
  EXPECT_THROW(weyl_expr(W, "r1000001"), NotARoot);
}

namespace
{

// A = Phi^+ \ Phi_K and w1 = w_0 w_K for the torus fixing K
UpperBound torus_bound(Context const &c, NodeSet K)
{
  std::vector<int> A;
  for (int a = 0; a < c.rs.num_pos(); ++a)
    if ((c.rs.support(a) & ~K) != 0)
      A.push_back(a);
  WeylElement w1 = c.weyl.mul(c.weyl.w0(), c.weyl.longest(K));
  return displacement_upper_standard(c.weyl, A, w1);
}

} // namespace

TEST(UpperBound, HomologyExamples)
{
  auto const &e6 = ctx("E6");
  auto ub = torus_bound(e6, all_nodes(6) & ~node_bit(5));
  EXPECT_EQ(ub.raw, 31);
  EXPECT_EQ(ub.rounded, 30);

  auto const &e7 = ctx("E7");
  ub = torus_bound(e7, all_nodes(7) & ~node_bit(6));
  EXPECT_EQ(ub.raw, 53);
  EXPECT_EQ(ub.rounded, 51);

  auto const &e8 = ctx("E8");
  ub = torus_bound(e8, all_nodes(8) & ~node_bit(7));
  EXPECT_EQ(ub.raw, 113);
  EXPECT_EQ(ub.rounded, 108);

  ub = torus_bound(e7, all_nodes(7) & ~node_bit(0));
  EXPECT_LE(ub.bound, 63);
  EXPECT_GE(ub.rounded, capped_displacement(e7.weyl, find_diagram(e7.rs.type(), "E7;4")));
}

TEST(UpperBound, Rejections)
{
  auto const &e6 = ctx("E6");
  EXPECT_THROW(displacement_upper_standard(e6.weyl, {e6.rs.highest_root()},
                                           e6.weyl.identity()),
               W1DoesNotDominate);
  EXPECT_THROW(displacement_upper_standard(e6.weyl, {e6.rs.neg(0)},
                                           e6.weyl.w0()),
               W1DoesNotDominate);
  auto ub = displacement_upper_standard(e6.weyl, {e6.rs.highest_root()},
                                        e6.weyl.reflection(e6.rs.highest_root()));
  EXPECT_EQ(ub.raw, 41);
  WeylElement w1 = search_w1(e6.weyl, {e6.rs.highest_root()});
  EXPECT_EQ(e6.weyl.length(w1), e6.rs.height(e6.rs.highest_root()));
  ub = displacement_upper_standard(e6.weyl, {e6.rs.highest_root()}, w1);
  EXPECT_EQ(ub.raw, 21);
  EXPECT_EQ(ub.rounded, 21);
}

TEST(UpperBound, PinFixturesE8Two)
{
  auto const &e8 = ctx("E8");
  for (auto const &fx : pin_fixtures(e8.rs.type()))
    if (fx.diagram == "E8;2") {
      auto pb = pin_bound(e8.weyl, fx);
      EXPECT_EQ(pb.bound.raw, 103);
      EXPECT_EQ(pb.bound.rounded, 90);
    }
}

TEST(Subsystem, IdentifiesAgainstShapeOracle)
{
  for (auto name : {"E6", "E7", "E8", "F4", "G2"}) {
    auto const &c = ctx(name);
    NodeSet S = all_nodes(c.rs.rank());
    for (NodeSet K = 0; K <= S; ++K) {
      std::vector<int> pos;
      for (int a = 0; a < c.rs.num_pos(); ++a)
        if ((c.rs.support(a) & ~K) == 0)
          pos.push_back(a);
      auto sub = identify_subsystem(c.rs, pos);
      EXPECT_EQ(int(sub.simple.size()), __builtin_popcount(K));
      if (pos.empty())
        continue;
      ASSERT_FALSE(sub.label.empty()) << name << " " << nodes_str(K);
      EXPECT_EQ(shape_of_label(sub.label), shape_oracle(c.rs, pos))
        << name << " " << sub.label;
    }
  }
}

TEST(Subsystem, KnownLabels)
{
  auto const &e8 = ctx("E8");
  EXPECT_EQ(identify_subsystem(e8.rs, e8.rs.closure_up({})).label, "");
  std::vector<int> all;
  for (int a = 0; a < e8.rs.num_pos(); ++a)
    all.push_back(a);
  EXPECT_EQ(identify_subsystem(e8.rs, all).label, "E8");

  auto const &f4 = ctx("F4");
  std::vector<int> b3, c3;
  for (int a = 0; a < f4.rs.num_pos(); ++a) {
    if (f4.rs.coeff(a, 3) == 0)
      b3.push_back(a);
    if (f4.rs.coeff(a, 0) == 0)
      c3.push_back(a);
  }
  EXPECT_EQ(identify_subsystem(f4.rs, b3).label, "B3");
  EXPECT_EQ(identify_subsystem(f4.rs, c3).label, "C3");
}

TEST(Homology, RootSystems)
{
  auto const &e6 = ctx("E6");
  Fp<5> c = Fp<5>::from_int(2);
  auto sub = homology_root_system<Fp<5>>(e6, {{4, c}, {5, c.inv() * c.inv()}});
  EXPECT_EQ(sub.positive.size(), 15u);
  EXPECT_EQ(sub.label, "A5");
  EXPECT_FALSE(classify_homology(e6.rs.type(), sub).domestic);

  sub = homology_root_system<Fp<5>>(e6, {{5, c}});
  EXPECT_EQ(sub.label, "D5");
  auto v = classify_homology(e6.rs.type(), sub);
  EXPECT_TRUE(v.domestic);
  EXPECT_EQ(v.diagram->name, "2E6;2");

  auto const &e7 = ctx("E7");
  Fp<5> m1 = Fp<5>::from_int(-1);
  sub = homology_root_system<Fp<5>>(e7, {{0, m1}});
  EXPECT_EQ(sub.label, "D6xA1");
  EXPECT_EQ(classify_homology(e7.rs.type(), sub).diagram->name, "E7;4");
  sub = homology_root_system<Fp<5>>(e7, {{6, c}});
  EXPECT_EQ(sub.label, "E6");
  EXPECT_EQ(classify_homology(e7.rs.type(), sub).diagram->name, "E7;3");

  auto const &e8 = ctx("E8");
  sub = homology_root_system<Fp<5>>(e8, {{7, m1}});
  EXPECT_EQ(sub.label, "E7xA1");
  EXPECT_EQ(classify_homology(e8.rs.type(), sub).diagram->name, "E8;4");

  auto const &f4 = ctx("F4");
  sub = homology_root_system<Fp<5>>(f4, {{3, m1}});
  EXPECT_EQ(sub.label, "B4");
  EXPECT_EQ(classify_homology(f4.rs.type(), sub).diagram->name, "F4;1^4");
  sub = homology_root_system<Fp<5>>(f4, {{0, m1}});
  EXPECT_EQ(sub.label, "C3xA1");
  EXPECT_FALSE(classify_homology(f4.rs.type(), sub).domestic);

  sub = homology_root_system<Fp<5>>(f4, {});
  EXPECT_TRUE(classify_homology(f4.rs.type(), sub).domestic);
  EXPECT_THROW(homology_root_system<Fp<5>>(f4, {{0, Fp<5>::from_int(0)}}),
               ZeroScalar);
}

TEST(Homology, WitnessFixtures)
{
  std::map<std::string, int> files = {{"E6", 5}, {"E7", 9}, {"E8", 8}, {"F4", 5}};
  for (auto const &[name, count] : files) {
    auto const &c = ctx(name.c_str());
    auto paths = witness_files(CHEV_FIXTURE_DIR "/homology", c.rs.type());
    EXPECT_EQ(int(paths.size()), count) << name;
    int max_cap = 0;
    for (auto const &d : catalogue(c.rs.type()))
      if (d.encircled != all_nodes(c.rs.rank()))
        max_cap = std::max(max_cap, capped_displacement(c.weyl, d));
    for (auto const &p : paths) {
      auto wc = read_witness_case(c.rs, p);
      auto sub = identify_subsystem(c.rs, wc.positive);
      EXPECT_EQ(sub.label, wc.label) << wc.file;
      EXPECT_EQ(shape_of_label(wc.label), shape_oracle(c.rs, wc.positive))
        << wc.file;
      EXPECT_FALSE(classify_homology(c.rs.type(), sub).domestic) << wc.file;
      int lb = displacement_lower_perp(c.weyl, sub, wc.witnesses);
      EXPECT_EQ(lb, wc.expect) << wc.file;
      EXPECT_GT(lb, max_cap) << wc.file;
    }
  }
}

TEST(Homology, E6WitnessesCompleteToLongest)
{
  auto const &e6 = ctx("E6");
  auto const &W = e6.weyl;
  WeylElement w = W.identity();
  for (auto r : {"112221", "111211", "011210"})
    w = W.mul(w, W.reflection(e6.rs.parse(r)));
  EXPECT_EQ(W.mul(w, W.s(1)), W.w0());
}

TEST(Homology, LowerBoundRejections)
{
  auto const &e6 = ctx("E6");
  auto sub = homology_root_system<Fp<5>>(e6, {{5, Fp<5>::from_int(2)}});
  EXPECT_THROW(displacement_lower_perp(e6.weyl, sub, {e6.rs.parse("010000")}),
               InvalidWitness);
  EXPECT_THROW(displacement_lower_perp(e6.weyl, sub, {e6.rs.parse("000001"),
                                                      e6.rs.parse("000011")}),
               InvalidWitness);
  EXPECT_EQ(displacement_lower_perp(e6.weyl, sub, {e6.rs.parse("000001")}), 1);
}

TEST(Pinning, FromAttainedCells)
{
  auto const &e8 = ctx("E8");
  auto d = pin_diagram(e8.weyl, {e8.weyl.w0()}, 120);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->name, "E8;8");
  EXPECT_THROW(pin_diagram(e8.weyl, {e8.weyl.w0()}, 108), Inconsistent);
  EXPECT_FALSE(pin_diagram(e8.weyl, {e8.weyl.identity()}, 120));

  auto const &e7 = ctx("E7");
  NodeSet S = all_nodes(7);
  NodeSet J = node_set({1, 6, 7});
  WeylElement cell = e7.weyl.mul(e7.weyl.longest(S & ~J), e7.weyl.w0());
  EXPECT_EQ(forced_types(e7.weyl, {cell}), J);
  d = pin_diagram(e7.weyl, {cell}, 51);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->name, "E7;3");
  EXPECT_EQ(pin_diagram(e7.weyl, {cell}, 60)->name, "E7;3");
  EXPECT_FALSE(pin_diagram(e7.weyl, {cell}, 63));
}

TEST(Pinning, GenericUnipotentsAllTypes)
{
  for (auto name : {"E6", "E7", "E8", "F4", "G2"}) {
    auto const &c = ctx(name);
    for (auto const &fx : pin_fixtures(c.rs.type())) {
      auto r = pin_unipotent<Fp<3>>(c, fx);
      ASSERT_TRUE(r.pinned) << fx.diagram;
      EXPECT_EQ(r.pinned->name, fx.diagram);
      NodeSet S = all_nodes(c.rs.rank());
      EXPECT_EQ(r.witness, c.weyl.mul(c.weyl.longest(S & ~r.claimed.encircled),
                                      c.weyl.w0()))
        << fx.diagram;
    }
  }
}

TEST(Skipped, Distances)
{
  std::map<std::string, std::size_t> orbit = {
    {"E6", 20}, {"E7", 32}, {"E8", 56}, {"F4", 8}};
  for (auto const &[name, n] : orbit) {
    auto const &c = ctx(name.c_str());
    auto sd = skipped_distances(c.weyl);
    EXPECT_EQ(sd.orbit.size(), n) << name;
    EXPECT_EQ(sd.reps.size(), 5u) << name;
    EXPECT_EQ(sd.attained.size(), 3u) << name;
    EXPECT_EQ(sd.skipped.size(), 2u) << name;
    EXPECT_EQ(sd.phi, c.rs.highest_root());
    // every long root is in Y, in the orbit of alpha_p, or phi
    std::set<int> seen(sd.fixed_part.begin(), sd.fixed_part.end());
    seen.insert(sd.orbit.begin(), sd.orbit.end());
    seen.insert(sd.phi);
    int longs = 0;
    for (int a = 0; a < c.rs.num_pos(); ++a)
      longs += c.rs.is_long(a);
    EXPECT_EQ(int(seen.size()), longs) << name;
    EXPECT_EQ(sd.fixed_part.size() + sd.orbit.size() + 1, std::size_t(longs))
      << name;
  }
}

TEST(Skipped, SkippingLemma)
{
  EXPECT_TRUE(skipping_holds(ctx("E6").weyl, 0));
  EXPECT_TRUE(skipping_holds(ctx("E7").weyl, 6));
  EXPECT_FALSE(skipping_holds(ctx("E7").weyl, 0));
}
