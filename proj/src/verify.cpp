#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "chev/field.h"
#include "chev/oppo.h"
#include "chev/scan.h"
#include "chev/verify.h"

namespace chev
{

bool SuiteResult::ok() const
{ return failures() == 0; }

std::size_t SuiteResult::failures() const
{
  return std::count_if(checks.begin(), checks.end(),
                       [](Check const &c) { return !c.ok; });
}

std::string format_check(Check const &c)
{
  std::string s = (c.ok ? "PASS  " : "FAIL  ") + c.name;
  if (!c.detail.empty())
    s += ": " + c.detail;
  return s;
}

namespace
{

using Checks = std::vector<Check>;

Context const &ctx(char const *name)
{ return context(RootSystemType::parse(name)); }

char const *const kTypes[] = {"E6", "E7", "E8", "F4", "G2"};

void add(Checks &out, std::string name, bool ok, std::string detail = "")
{ out.push_back({std::move(name), ok, std::move(detail)}); }

template<typename T>
std::string join(std::vector<T> const &v, char const *sep = ",")
{
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k)
    os << (k ? sep : "") << v[k];
  return os.str();
}

// runs f and records an exception as a failed check
void guarded(Checks &out, std::string const &name, std::function<void()> f)
{
  try {
    f();
  } catch (std::exception const &e) {
    add(out, name, false, e.what());
  }
}

Checks appendix(VerifyOptions const &opt)
{
  Checks out;
  for (auto t : kTypes) {
    std::string name = std::string("root table ") + t;
    guarded(out, name, [&] {
      RootSystem rs(RootSystemType::parse(t));
      auto table = read_root_table(opt.fixtures + "/" + t + ".pos_roots.txt");
      bool ok = table == rs.positive_roots();
      add(out, name, ok,
          std::to_string(table.size()) + " fixture rows, " +
            std::to_string(rs.num_pos()) + " generated");
    });
  }
  return out;
}

Checks catalogue_suite(VerifyOptions const &)
{
  Checks out;
  std::map<std::string, std::size_t> counts = {
    {"E6", 6}, {"E7", 6}, {"E8", 5}, {"F4", 5}, {"G2", 4}};
  for (auto t : kTypes) {
    auto const &c = ctx(t);
    auto cat = catalogue(c.rs.type());
    std::vector<std::string> names;
    for (auto const &d : cat)
      names.push_back(d.name);
    add(out, std::string("diagrams ") + t, cat.size() == counts[t],
        std::to_string(cat.size()) + ": " + join(names, " "));
  }

  auto const &e7 = ctx("E7");
  std::vector<int> caps;
  for (auto const &d : catalogue(e7.rs.type()))
    caps.push_back(capped_displacement(e7.weyl, d));
  std::sort(caps.begin(), caps.end());
  add(out, "capped displacements E7",
      caps == std::vector<int>{0, 33, 50, 51, 60, 63}, join(caps));

  auto const &e8 = ctx("E8");
  for (auto [name, want] : {std::pair{"E8;2", 90}, std::pair{"E8;4", 108}}) {
    int got = capped_displacement(e8.weyl, find_diagram(e8.rs.type(), name));
    add(out, std::string("capped displacement ") + name, got == want,
        std::to_string(got));
  }

  // l(w_{S\J} w_0) = l(w_0) - |Phi+_{S\J}|
  for (auto t : kTypes) {
    auto const &c = ctx(t);
    NodeSet S = all_nodes(c.rs.rank());
    bool ok = true;
    for (auto const &d : catalogue(c.rs.type())) {
      int inside = 0;
      for (int a = 0; a < c.rs.num_pos(); ++a)
        inside += (c.rs.support(a) & d.encircled) == 0;
      ok = ok && capped_displacement(c.weyl, d) == c.rs.num_pos() - inside;
      ok = ok && (S & d.encircled) == d.encircled;
    }
    add(out, std::string("capped length formula ") + t, ok);
  }
  return out;
}

Checks commutators(VerifyOptions const &)
{
  Checks out;
  std::vector<std::pair<long, long>> scalars;
  for (long a : {1, 2, 3})
    for (long b : {1, 2, 3})
      scalars.emplace_back(a, b);
  for (auto t : kTypes) {
    auto const &c = ctx(t);
    std::string failure;
    bool ok = verify_commutators(c.chev, scalars, &failure) &&
              c.chev.check_jacobi(&failure);
    add(out, std::string("commutator relations ") + t, ok,
        ok ? "scalars {1,2,3}^2" : failure);
    if (!c.rs.simply_laced())
      continue;
    bool unit = true;
    int pairs = 0;
    for (int a = 0; a < c.rs.num_roots(); ++a)
      for (int b = 0; b < c.rs.num_roots(); ++b)
        if (c.rs.add(a, b) >= 0) {
          ++pairs;
          unit = unit && std::abs(c.chev.N(a, b)) == 1;
        }
    add(out, std::string("structure constants +-1 ") + t, unit,
        std::to_string(pairs) + " summable pairs");
  }
  return out;
}

template<typename F>
void oracle_words(Checks &out, char const *t, VerifyOptions const &opt)
{
  auto const &c = ctx(t);
  Engine<F> eng(c);
  std::mt19937_64 rng(opt.seed);
  int bad = 0;
  for (int k = 0; k < opt.oracle_words; ++k)
    if (!eng.check(random_word<F>(c.rs, rng, 12)))
      ++bad;
  add(out, std::string("normal form ") + t + "(" + F::name() + ")", bad == 0,
      std::to_string(opt.oracle_words) + " words, " + std::to_string(bad) +
        " mismatches");
}

Checks oracle(VerifyOptions const &opt)
{
  Checks out;
  for (auto t : kTypes) {
    oracle_words<Fp<2>>(out, t, opt);
    oracle_words<Fp<3>>(out, t, opt);
    oracle_words<Fp<5>>(out, t, opt);
  }
  auto const &g2 = ctx("G2");
  using F = Fp<2>;
  Engine<F> eng(g2);
  CellOracle<F> cells(g2);
  std::mt19937_64 rng(opt.seed + 1);
  int bad = 0;
  for (int k = 0; k < opt.oracle_cells; ++k) {
    auto w = random_word<F>(g2.rs, rng, 12);
    if (!(eng.cell(w) == cells.cell(eng.matrix(w))))
      ++bad;
  }
  add(out, "cells against enumeration G2(f2)", bad == 0,
      std::to_string(opt.oracle_cells) + " words over " +
        std::to_string(cells.size()) + " group elements, " +
        std::to_string(bad) + " mismatches");
  return out;
}

template<typename F>
ScanReport g2_scan(Word<F> const &theta)
{
  ScanPlan<F> p;
  p.theta = theta;
  p.strategy = Strategy::FullChambers;
  return scan_displacement(ctx("G2"), p);
}

std::string diagram_of(ScanReport const &r)
{ return r.diagram ? r.diagram->name : "none"; }

template<typename F>
void g2_long_root(Checks &out)
{
  auto const &g2 = ctx("G2");
  auto const &W = g2.weyl;
  auto r = g2_scan<F>({Token<F>::x(g2.rs.highest_root(), F::from_int(1))});
  std::set<std::uint64_t> want{W.key(W.identity())}, got;
  for (int a = 0; a < g2.rs.num_pos(); ++a)
    if (g2.rs.is_long(a))
      want.insert(W.key(W.reflection(a)));
  for (auto const &[w, n] : r.cells)
    got.insert(W.key(w));
  add(out, "x_phi(1) over " + F::name(),
      diagram_of(r) == "G2;1^2" && got == want,
      diagram_of(r) + ", " + std::to_string(got.size()) +
        " cells: identity and the long root reflections");
}

template<typename F>
void g2_short_root(Checks &out, std::string const &want)
{
  auto const &g2 = ctx("G2");
  auto r = g2_scan<F>({Token<F>::x(g2.rs.highest_root_of(3, true),
                                   F::from_int(1))});
  add(out, "x_phi'(1) over " + F::name(), diagram_of(r) == want,
      diagram_of(r) + ", displacement " + std::to_string(r.displacement));
}

Checks g2_suite(VerifyOptions const &)
{
  Checks out;
  guarded(out, "long root elations", [&] {
    g2_long_root<Fp<2>>(out);
    g2_long_root<Fp<3>>(out);
    g2_long_root<GF4>(out);
  });
  guarded(out, "short root elations", [&] {
    g2_short_root<Fp<2>>(out, "G2;2");
    g2_short_root<Fp<3>>(out, "G2;1^1");
    g2_short_root<GF4>(out, "G2;2");
  });
  auto const &g2 = ctx("G2");
  guarded(out, "x_a1(1)s1 over f2", [&] {
    using F = Fp<2>;
    Word<F> theta{Token<F>::x(g2.rs.simple(0), F::from_int(1)),
                  Token<F>::n(0)};
    auto r = g2_scan<F>(theta);
    auto fs = classify_fixed_structure_g2<F>(g2, theta);
    add(out, "x_a1(1)s1 over f2",
        diagram_of(r) == "G2;1^1" && fs.kind == FixedStructure::Dist3Ovoid,
        diagram_of(r) + ", fixed " + fixed_structure_name(fs.kind) + " (" +
          std::to_string(fs.fixed_points) + " points, " +
          std::to_string(fs.fixed_lines) + " lines)");
  });
  guarded(out, "h_w1(z) over f4", [&] {
    Word<GF4> theta{Token<GF4>::h({{0, GF4::element(2)}})};
    auto r = g2_scan<GF4>(theta);
    auto fs = classify_fixed_structure_g2<GF4>(g2, theta);
    add(out, "h_w1(z) over f4",
        diagram_of(r) == "G2;1^1" &&
          fs.kind == FixedStructure::LargeFullSubhexagon,
        diagram_of(r) + ", fixed " + fixed_structure_name(fs.kind) + " (" +
          std::to_string(fs.fixed_points) + " points, " +
          std::to_string(fs.fixed_lines) + " lines)");
  });
  return out;
}

Checks f4_scan(VerifyOptions const &opt)
{
  Checks out;
  auto const &f4 = ctx("F4");
  using F = Fp<2>;
  auto one = F::from_int(1);
  struct Case
  {
    std::string name;
    Word<F> theta;
    std::string diagram;
    int displacement;
  };
  std::vector<Case> cases = {
    {"x_phi(1)", {Token<F>::x(f4.rs.parse("2342"), one)}, "F4;1^1", 15},
    {"x_phi'(1)", {Token<F>::x(f4.rs.parse("1232"), one)}, "F4;1^4", 15},
    {"x_phi(1)x_phiC3(1)",
     {Token<F>::x(f4.rs.parse("2342"), one),
      Token<F>::x(f4.rs.parse("0122"), one)},
     "F4;2", 20}};
  for (auto const &c : cases)
    guarded(out, c.name, [&] {
      ScanPlan<F> p;
      p.theta = c.theta;
      p.strategy = Strategy::OppositeSphere;
      p.threads = opt.threads;
      auto r = scan_displacement(f4, p);
      add(out, c.name,
          diagram_of(r) == c.diagram && r.displacement == c.displacement &&
            r.chambers == (1u << 24),
          diagram_of(r) + ", displacement " + std::to_string(r.displacement) +
            ", " + std::to_string(r.chambers) + " chambers");
    });
  return out;
}

Checks unipotent_pins(VerifyOptions const &)
{
  Checks out;
  for (auto t : kTypes) {
    auto const &c = ctx(t);
    for (auto const &fx : pin_fixtures(c.rs.type()))
      guarded(out, "pin " + fx.diagram, [&] {
        auto r = pin_unipotent<Fp<3>>(c, fx);
        NodeSet S = all_nodes(c.rs.rank());
        bool witness = r.witness == c.weyl.mul(c.weyl.longest(S & ~r.claimed.encircled),
                                               c.weyl.w0());
        bool ok = witness && r.pinned && r.pinned->name == fx.diagram;
        add(out, "pin " + fx.diagram, ok,
            "cell length " + std::to_string(c.weyl.length(r.witness)) +
              ", bound " + std::to_string(r.bound.bound.raw) + "/" +
              std::to_string(r.bound.bound.demazure) + " -> " +
              std::to_string(r.bound.bound.rounded) + ", pinned " +
              (r.pinned ? r.pinned->name : "none"));
      });
  }
  auto const &e7 = ctx("E7");
  WeylElement x = e7.weyl.mul(e7.weyl.w0(),
                              e7.weyl.longest(node_set({1, 2, 3, 4, 5, 6})));
  int occ = e7.weyl.min_occurrences(x, 6);
  add(out, "w0 w_E6 has at least 3 occurrences of s7", occ >= 3,
      std::to_string(occ));
  return out;
}

template<typename F>
void homology_row(Checks &out, char const *t, int node, F c,
                  std::vector<std::string> const &labels,
                  std::string const &diagram)
{
  auto const &cx = ctx(t);
  auto sub = homology_root_system<F>(cx, {{node, c}});
  auto v = classify_homology(cx.rs.type(), sub);
  bool ok = std::find(labels.begin(), labels.end(), sub.label) != labels.end() &&
            v.domestic && v.diagram && v.diagram->name == diagram;
  add(out,
      std::string(t) + " h_w" + std::to_string(node + 1) + "(" + c.str() +
        ") over " + F::name(),
      ok, sub.label + " -> " + (v.diagram ? v.diagram->name : "none"));
}

template<typename F>
void homology_rows(Checks &out, F c)
{
  F m1 = F::from_int(-1);
  homology_row<F>(out, "E6", 5, c, {"D5"}, "2E6;2");
  homology_row<F>(out, "E7", 6, c, {"E6"}, "E7;3");
  homology_row<F>(out, "E7", 0, c, {"D6", "D6xA1"}, "E7;4");
  homology_row<F>(out, "E7", 0, m1, {"D6xA1"}, "E7;4");
  homology_row<F>(out, "E8", 7, c, {"E7", "E7xA1"}, "E8;4");
  homology_row<F>(out, "E8", 7, m1, {"E7xA1"}, "E8;4");
  homology_row<F>(out, "F4", 3, m1, {"B4"}, "F4;1^4");
}

Checks homology(VerifyOptions const &opt)
{
  Checks out;
  homology_rows<Fp<5>>(out, Fp<5>::from_int(2));
  homology_rows<Fp<7>>(out, Fp<7>::from_int(3));
  homology_rows<Rational>(out, Rational::from_int(2));
  for (auto t : {"E6", "E7", "E8", "F4"}) {
    auto const &c = ctx(t);
    int max_cap = 0;
    for (auto const &d : catalogue(c.rs.type()))
      if (d.encircled != all_nodes(c.rs.rank()))
        max_cap = std::max(max_cap, capped_displacement(c.weyl, d));
    auto paths = witness_files(opt.fixtures + "/homology", c.rs.type());
    if (paths.empty())
      add(out, std::string("witness files ") + t, false, "none found");
    for (auto const &p : paths)
      guarded(out, p, [&] {
        auto wc = read_witness_case(c.rs, p);
        auto sub = identify_subsystem(c.rs, wc.positive);
        int lb = displacement_lower_perp(c.weyl, sub, wc.witnesses);
        bool ok = sub.label == wc.label &&
                  !classify_homology(c.rs.type(), sub).domestic &&
                  lb == wc.expect && lb > max_cap;
        add(out, "witness " + wc.file, ok,
            sub.label + ", displacement >= " + std::to_string(lb) +
              " > " + std::to_string(max_cap));
      });
  }
  return out;
}

Checks weyl_facts(VerifyOptions const &)
{
  Checks out;
  std::vector<std::size_t> orbits;
  bool reps_ok = true;
  std::vector<std::size_t> reps;
  for (auto t : {"E6", "E7", "E8", "F4"}) {
    auto sd = skipped_distances(ctx(t).weyl);
    orbits.push_back(sd.orbit.size());
    reps.push_back(sd.reps.size());
    reps_ok = reps_ok && sd.reps.size() == 5 && sd.attained.size() == 3 &&
              sd.skipped.size() == 2;
  }
  add(out, "|W'.alpha_p| = 20,32,56,8",
      orbits == std::vector<std::size_t>{20, 32, 56, 8}, join(orbits));
  add(out, "|R_p| = 5 in the long root geometries E6,2 E7,1 E8,8 F4,1",
      reps_ok, join(reps));
  {
    auto const &f4 = ctx("F4");
    NodeSet J = all_nodes(4) & ~node_bit(3);
    std::size_t n = f4.weyl.min_double_coset_reps(J, J).size();
    add(out, "|R_p| = 5 in F4,4", n == 5, std::to_string(n));
  }
  for (auto [t, node] : {std::pair{"E6", 0}, std::pair{"E7", 6}}) {
    auto const &c = ctx(t);
    NodeSet J = all_nodes(c.rs.rank()) & ~node_bit(node);
    std::size_t n = c.weyl.min_double_coset_reps(J, J).size();
    add(out,
        std::string("point distances in ") + t + "," + std::to_string(node + 1) +
          " = 4",
        n == 4, std::to_string(n));
  }
  for (auto [t, node] : {std::pair{"E6", 0}, std::pair{"E7", 6}}) {
    bool ok = skipping_holds(ctx(t).weyl, node);
    add(out,
        std::string("skipping over all reflections ") + t + " i=" +
          std::to_string(node + 1),
        ok);
  }
  bool b2 = verify_barbara2(ctx("F4").weyl);
  add(out, "F4 C3 coset check over 24 cosets", b2);
  return out;
}

template<typename F>
Word<F> conj(Engine<F> const &eng, Word<F> const &g, Word<F> const &theta)
{
  Word<F> w = g;
  w.insert(w.end(), theta.begin(), theta.end());
  auto gi = eng.inverse(g);
  w.insert(w.end(), gi.begin(), gi.end());
  return w;
}

Checks identities(VerifyOptions const &)
{
  Checks out;
  using Q = Rational;
  Q one = Q::from_int(1);
  for (auto t : {"E6", "E7", "E8", "F4"}) {
    auto const &c = ctx(t);
    Engine<Q> eng(c);
    int phi = c.rs.highest_root(), mphi = c.rs.neg(phi);
    int p = -1;
    for (int i = 0; i < c.rs.rank(); ++i)
      if (c.rs.coroot_pairing(phi, c.rs.simple(i)) != 0)
        p = i;
    for (int ci : {2, 3}) {
      Q cc = Q::from_int(ci);
      Word<Q> theta{Token<Q>::x(mphi, one),
                    Token<Q>::x(phi, -(cc - one) * (cc - one)),
                    Token<Q>::h({{p, cc}})};
      Word<Q> g{Token<Q>::x(phi, -cc), Token<Q>::x(mphi, one),
                Token<Q>::nr(phi, one)};
      Word<Q> w = conj(eng, g, theta);
      // x_{-phi}(t) = x_phi(1/t) s_phi(..) x_phi(1/t): read 1/t off u
      auto nf = eng.normalize(w);
      std::string found = "not in U_-phi";
      bool ok = false;
      if (nf.w == c.weyl.reflection(phi) && !nf.u[phi].is_zero()) {
        for (Q tt : {one / nf.u[phi], -one / nf.u[phi]})
          if (eng.same_element(w, {Token<Q>::x(mphi, tt)})) {
            ok = true;
            found = "x_-phi(" + tt.str() + ")";
          }
      }
      add(out, std::string("long root elation conjugate ") + t + " c=" +
                 std::to_string(ci),
          ok, found);
    }
  }

  auto const &f4 = ctx("F4");
  Engine<Q> eng(f4);
  int eps = f4.rs.parse("1110"), ps = f4.rs.parse("1232"),
      phi = f4.rs.parse("2342");
  for (int a : {1, 2, 3}) {
    Q A = Q::from_int(a), k = one / (A * Q::from_int(2));
    Word<Q> w = conj(eng, {Token<Q>::x(eps, k)}, {Token<Q>::x(ps, A)});
    auto nf = eng.normalize(w);
    bool support = nf.w == f4.weyl.identity();
    for (int b = 0; b < f4.rs.num_pos(); ++b)
      support = support && nf.u[b].is_zero() &&
                (b == ps || b == phi || nf.up[b].is_zero());
    for (auto v : nf.chi)
      support = support && v.is_one();
    bool ok = support && !nf.up[ps].is_zero() && !nf.up[phi].is_zero() &&
              eng.check(w);
    add(out, "F4 short root conjugate a=" + std::to_string(a), ok,
        "x_phi'(" + nf.up[ps].str() + ") x_phi(" + nf.up[phi].str() + ")");
  }
  return out;
}

using SuiteFn = Checks (*)(VerifyOptions const &);

std::vector<std::pair<std::string, SuiteFn>> const &suites()
{
  static std::vector<std::pair<std::string, SuiteFn>> s = {
    {"appendix", appendix},
    {"catalogue", catalogue_suite},
    {"commutators", commutators},
    {"oracle", oracle},
    {"g2", g2_suite},
    {"f4-scan", f4_scan},
    {"unipotent-pins", unipotent_pins},
    {"homology", homology},
    {"weyl-facts", weyl_facts},
    {"identities", identities}};
  return s;
}

} // namespace

std::vector<std::string> const &suite_names()
{
  static std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (auto const &[k, f] : suites())
      n.push_back(k);
    return n;
  }();
  return names;
}

SuiteResult run_suite(std::string const &name, VerifyOptions const &opt)
{
  for (auto const &[k, f] : suites())
    if (k == name) {
      auto start = std::chrono::steady_clock::now();
      SuiteResult r;
      r.suite = name;
      r.checks = f(opt);
      r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      return r;
    }
  throw ParseError("unknown suite '" + name + "'");
}

} // namespace chev
