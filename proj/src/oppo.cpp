#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "chev/oppo.h"

namespace chev
{

namespace
{

struct Entry
{
  char const *name;
  std::vector<int> nodes;
  int twist;
  bool type_preserving;
};

std::vector<Entry> entries(RootSystemType t, bool special)
{
  std::vector<int> all;
  for (int i = 1; i <= t.rank; ++i)
    all.push_back(i);

  std::vector<Entry> res;
  if (t == RootSystemType{Series::E, 6})
    res = {{"2E6;0", {}, 2, true},
           {"2E6;1", {2}, 2, true},
           {"2E6;2", {1, 2, 6}, 2, true},
           {"2E6;4", all, 2, true},
           {"E6;2", {1, 6}, 1, false},
           {"E6;6", all, 1, false}};
  else if (t == RootSystemType{Series::E, 7})
    res = {{"E7;0", {}, 1, true},
           {"E7;1", {1}, 1, true},
           {"E7;2", {1, 6}, 1, true},
           {"E7;3", {1, 6, 7}, 1, true},
           {"E7;4", {1, 3, 4, 6}, 1, true},
           {"E7;7", all, 1, true}};
  else if (t == RootSystemType{Series::E, 8})
    res = {{"E8;0", {}, 1, true},
           {"E8;1", {8}, 1, true},
           {"E8;2", {1, 8}, 1, true},
           {"E8;4", {1, 6, 7, 8}, 1, true},
           {"E8;8", all, 1, true}};
  else if (t == RootSystemType{Series::F, 4}) {
    res = {{"F4;0", {}, 1, true},
           {"F4;1^1", {1}, 1, true},
           {"F4;1^4", {4}, 1, true},
           {"F4;2", {1, 4}, 1, true},
           {"F4;4", all, 1, true}};
    if (special)
      res.push_back({"2F4;2", all, 2, false});
  } else if (t == RootSystemType{Series::G, 2}) {
    res = {{"G2;0", {}, 1, true},
           {"G2;1^1", {1}, 1, true},
           {"G2;1^2", {2}, 1, true},
           {"G2;2", all, 1, true}};
    if (special)
      res.push_back({"2G2;1", all, 2, false});
  } else
    throw UnsupportedType(t.name() + " has no catalogue");
  return res;
}

} // namespace

std::vector<Diagram> catalogue(RootSystemType t, bool special)
{
  std::vector<Diagram> res;
  for (auto const &e : entries(t, special)) {
    Diagram d;
    d.type = t;
    d.encircled = node_set(e.nodes);
    d.twist = e.twist;
    d.name = e.name;
    d.type_preserving = e.type_preserving;
    d.computable = e.type_preserving;
    res.push_back(d);
  }
  return res;
}

Diagram find_diagram(RootSystemType t, std::string const &name)
{
  for (auto const &d : catalogue(t, true))
    if (d.name == name)
      return d;
  throw ParseError("no diagram '" + name + "' for " + t.name());
}

std::optional<Diagram> diagram_with_nodes(RootSystemType t, NodeSet J)
{
  for (auto const &d : catalogue(t))
    if (d.type_preserving && d.encircled == J)
      return d;
  return std::nullopt;
}

std::string diagram_text(Diagram const &d)
{ return d.name + " " + nodes_str(d.encircled); }

int capped_displacement(Weyl const &W, Diagram const &d)
{
  NodeSet S = all_nodes(W.rank());
  return W.length(W.mul(W.longest(S & ~d.encircled), W.w0()));
}

namespace
{

std::optional<std::vector<int>> strip(RootSystem const &rs, Diagram const &d,
                                      bool dual)
{
  NodeSet active = all_nodes(rs.rank());
  NodeSet left = d.encircled;
  std::vector<int> seq;
  for (;;) {
    bool removed = false;
    for (NodeSet c : rs.components(active)) {
      NodeSet p = dual ? rs.dual_polar_nodes(c) : rs.polar_nodes(c);
      if (p == 0 || (p & ~left) != 0)
        continue;
      int root = -1;
      if (dual)
        root = rs.highest_root_of(c, true);
      if (root < 0)
        root = rs.highest_root_of(c);
      seq.push_back(root);
      active &= ~p;
      left &= ~p;
      removed = true;
      break;
    }
    if (!removed)
      break;
  }
  if (left != 0)
    return std::nullopt;
  return seq;
}

} // namespace

std::optional<std::vector<int>> polar_closed_sequence(RootSystem const &rs,
                                                      Diagram const &d)
{
  if (!d.type_preserving)
    return std::nullopt;
  return strip(rs, d, false);
}

std::optional<std::vector<int>>
dual_polar_closed_sequence(RootSystem const &rs, Diagram const &d)
{
  if (!d.type_preserving)
    return std::nullopt;
  return strip(rs, d, true);
}

int round_to_catalogue(Weyl const &W, int b)
{
  int best = 0;
  for (auto const &d : catalogue(W.roots().type()))
    if (d.type_preserving) {
      int c = capped_displacement(W, d);
      if (c <= b)
        best = std::max(best, c);
    }
  return best;
}

UpperBound displacement_upper_standard(Weyl const &W, std::vector<int> const &A,
                                       WeylElement const &w1)
{
  RootSystem const &rs = W.roots();
  for (int a : A)
    if (a < 0 || !rs.positive(a))
      throw W1DoesNotDominate("root set must consist of positive roots");

  std::vector<char> inv(rs.num_pos(), 0);
  for (int a : W.inversion_set(w1))
    inv[a] = 1;
  WeylElement w0 = W.w0();
  for (int a : rs.closure_up(A)) {
    int b = rs.neg(w0(a));
    if (!inv[b])
      throw W1DoesNotDominate("pi_0(" + rs.str(a) + ") = " + rs.str(b) +
                              " is not inverted by w1");
  }

  UpperBound ub;
  int l = W.length(w1);
  ub.raw = 2 * l - 1;
  if (l == 0)
    ub.raw = 0;
  ub.demazure = W.length(W.demazure(w1, W.inverse(w1)));
  ub.bound = std::min({ub.raw, ub.demazure, rs.num_pos()});
  ub.rounded = round_to_catalogue(W, ub.bound);
  return ub;
}

bool Subsystem::contains(int root) const
{
  return std::binary_search(positive.begin(), positive.end(), root);
}

namespace
{

struct Component
{
  std::string name;
  int rank;
  int npos;
};

Component identify_component(RootSystem const &rs,
                             std::vector<int> const &simple)
{
  int r = int(simple.size());
  auto bond = [&](int i, int j) {
    return std::max(std::abs(rs.coroot_pairing(simple[i], simple[j])),
                    std::abs(rs.coroot_pairing(simple[j], simple[i])));
  };
  std::vector<int> degree(r, 0);
  int max_bond = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && bond(i, j) > 0) {
        ++degree[i];
        max_bond = std::max(max_bond, bond(i, j));
      }
  auto named = [&](std::string s, int rank, int npos) {
    return Component{s + std::to_string(rank), rank, npos};
  };

  if (max_bond == 3)
    return named("G", 2, 6);
  if (max_bond == 2) {
    if (r == 2)
      return named("B", 2, 4);
    if (r == 4) {
      bool middle = false;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (i != j && bond(i, j) == 2 && degree[i] == 2 && degree[j] == 2)
            middle = true;
      if (middle)
        return named("F", 4, 24);
    }
    int lng = 0;
    for (int a : simple)
      if (rs.is_long(a))
        ++lng;
    return named(lng == r - 1 ? "B" : "C", r, r * r);
  }

  int branch = -1;
  for (int i = 0; i < r; ++i)
    if (degree[i] == 3)
      branch = i;
  if (branch < 0)
    return named("A", r, r * (r + 1) / 2);

  std::vector<int> arms;
  for (int j = 0; j < r; ++j) {
    if (j == branch || bond(branch, j) == 0)
      continue;
    int len = 1, prev = branch, cur = j;
    for (;;) {
      int next = -1;
      for (int k = 0; k < r; ++k)
        if (k != prev && k != cur && bond(cur, k) > 0)
          next = k;
      if (next < 0)
        break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1)
    return named("D", r, r * (r - 1));
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) {
    static int const counts[] = {0, 0, 36, 63, 120};
    return named("E", r, counts[arms[2]]);
  }
  return Component{"", r, -1};
}

} // namespace

Subsystem identify_subsystem(RootSystem const &rs, std::vector<int> positive)
{
  Subsystem sub;
  std::sort(positive.begin(), positive.end());
  positive.erase(std::unique(positive.begin(), positive.end()),
                 positive.end());
  sub.positive = positive;
  std::vector<char> in(rs.num_pos(), 0);
  for (int a : positive)
    in[a] = 1;

  for (int a : positive) {
    bool decomposable = false;
    for (int b : positive) {
      int c = rs.add(a, rs.neg(b));
      if (c >= 0 && rs.positive(c) && in[c]) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable)
      sub.simple.push_back(a);
  }

  // split the simple system into connected pieces
  int n = int(sub.simple.size());
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j)
        if (comp[j] < 0 && rs.inner(sub.simple[i], sub.simple[j]) != 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }

  std::vector<Component> parts;
  int total = 0;
  bool ok = true;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> simple;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c)
        simple.push_back(sub.simple[i]);
    Component k = identify_component(rs, simple);
    if (k.npos < 0)
      ok = false;
    total += k.npos;
    parts.push_back(k);
  }
  if (!ok || total != int(positive.size()))
    return sub;

  std::sort(parts.begin(), parts.end(),
            [](Component const &a, Component const &b) {
              if (a.rank != b.rank)
                return a.rank > b.rank;
              return a.name < b.name;
            });
  for (auto const &p : parts) {
    sub.components.push_back(p.name);
    sub.label += (sub.label.empty() ? "" : "x") + p.name;
  }
  return sub;
}

HomologyVerdict classify_homology(RootSystemType t, Subsystem const &sub)
{
  if (sub.label.empty() && !sub.positive.empty())
    throw UnknownSubsystem("fixed roots do not form a recognised subsystem");

  static std::map<std::pair<std::string, std::string>, std::string> const
    table = {{{"E6", "D5"}, "2E6;2"},   {{"E7", "E6"}, "E7;3"},
             {{"E7", "D6"}, "E7;4"},    {{"E7", "D6xA1"}, "E7;4"},
             {{"E8", "E7"}, "E8;4"},    {{"E8", "E7xA1"}, "E8;4"},
             {{"F4", "B4"}, "F4;1^4"}, {{"G2", "A2"}, "G2;1^1"}};

  HomologyVerdict v;
  if (sub.label == t.name()) {
    v.domestic = true;
    v.diagram = catalogue(t).front();
    return v;
  }
  auto it = table.find({t.name(), sub.label});
  if (it == table.end())
    return v;
  v.domestic = true;
  v.diagram = find_diagram(t, it->second);
  return v;
}

int displacement_lower_perp(Weyl const &W, Subsystem const &sub,
                            std::vector<int> const &witnesses)
{
  RootSystem const &rs = W.roots();
  WeylElement w = W.identity();
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    int b = witnesses[k];
    if (b < 0 || !rs.positive(b))
      throw InvalidWitness("witness must be a positive root");
    if (sub.contains(b))
      throw InvalidWitness(rs.str(b) + " lies in the fixed subsystem");
    for (std::size_t j = 0; j < k; ++j)
      if (rs.inner(b, witnesses[j]) != 0)
        throw InvalidWitness(rs.str(b) + " and " + rs.str(witnesses[j]) +
                             " are not perpendicular");
    w = W.mul(w, W.reflection(b));
  }
  return W.length(w);
}

NodeSet forced_types(Weyl const &W, std::vector<WeylElement> const &attained)
{
  int n = W.rank();
  NodeSet S = all_nodes(n);
  NodeSet forced = 0;
  for (int i = 0; i < n; ++i) {
    NodeSet O = node_bit(i) | W.pi0(node_bit(i));
    if (forced & O)
      continue;
    WeylElement target = W.double_coset_rep(W.w0(), S & ~O, S & ~O);
    for (auto const &w : attained)
      if (W.double_coset_rep(w, S & ~O, S & ~O) == target) {
        forced |= O;
        break;
      }
  }
  return forced;
}

std::optional<Diagram> pin_diagram(Weyl const &W,
                                   std::vector<WeylElement> const &attained,
                                   int upper)
{
  NodeSet forced = forced_types(W, attained);
  int longest = 0;
  for (auto const &w : attained)
    longest = std::max(longest, W.length(w));

  std::vector<Diagram> fits;
  for (auto const &d : catalogue(W.roots().type())) {
    if (!d.type_preserving || (forced & ~d.encircled) != 0)
      continue;
    int cap = capped_displacement(W, d);
    if (cap > upper || cap < longest)
      continue;
    fits.push_back(d);
  }
  if (fits.empty())
    throw Inconsistent("no admissible diagram has forced types " +
                       nodes_str(forced) + " and displacement in [" +
                       std::to_string(longest) + ", " +
                       std::to_string(upper) + "]");
  if (fits.size() > 1)
    return std::nullopt;
  return fits.front();
}

SkippedDistances skipped_distances(Weyl const &W)
{
  RootSystem const &rs = W.roots();
  NodeSet S = all_nodes(rs.rank());
  NodeSet polar = rs.polar_nodes(S);
  if (node_list(polar).size() != 1)
    throw UnsupportedType("polar type is not a single node");
  int p = node_list(polar)[0];
  NodeSet Wp = S & ~polar;

  SkippedDistances r;
  r.phi = rs.highest_root();
  r.orbit = W.orbit(Wp, rs.simple(p));
  for (int a = 0; a < rs.num_pos(); ++a)
    if (rs.is_long(a) && rs.coeff(a, p) == 0)
      r.fixed_part.push_back(a);

  r.reps = W.min_double_coset_reps(Wp, Wp);
  std::vector<char> hit(r.reps.size(), 0);
  auto mark = [&](WeylElement const &w) {
    WeylElement m = W.double_coset_rep(w, Wp, Wp);
    for (std::size_t k = 0; k < r.reps.size(); ++k)
      if (r.reps[k] == m)
        hit[k] = 1;
  };
  mark(W.identity());
  for (int a = 0; a < rs.num_pos(); ++a)
    if (rs.is_long(a))
      mark(W.reflection(a));
  for (std::size_t k = 0; k < r.reps.size(); ++k)
    (hit[k] ? r.attained : r.skipped).push_back(r.reps[k]);
  return r;
}

bool skipping_holds(Weyl const &W, int node)
{
  RootSystem const &rs = W.roots();
  NodeSet J = all_nodes(rs.rank()) & ~node_bit(node);
  WeylElement id = W.identity();
  WeylElement si = W.s(node);
  for (int a = 0; a < rs.num_pos(); ++a) {
    WeylElement m = W.double_coset_rep(W.reflection(a), J, J);
    if (!(m == id) && !(m == si))
      return false;
  }
  return true;
}

namespace
{

std::vector<std::string> split_ws(std::string const &s)
{
  std::istringstream in(s);
  std::vector<std::string> res;
  std::string t;
  while (in >> t)
    res.push_back(t);
  return res;
}

// "3:1,7:-2" as a coweight over the fundamental coweights
std::vector<int> parse_coweight(std::string const &s, int rank)
{
  std::vector<int> lam(rank, 0);
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("bad coweight term '" + item + "'");
    int i = std::stoi(item.substr(0, colon));
    int c = std::stoi(item.substr(colon + 1));
    if (i < 1 || i > rank)
      throw ParseError("coweight node out of range in '" + s + "'");
    lam[i - 1] += c;
  }
  return lam;
}

} // namespace

WitnessCase read_witness_case(RootSystem const &rs, std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot read " + path);
  WitnessCase wc;
  wc.file = std::filesystem::path(path).filename().string();
  wc.type = rs.type();

  struct Cond
  {
    std::vector<int> lam;
    int mod;
  };
  std::vector<Cond> conds;
  std::vector<int> extra, explicit_roots;
  bool have_explicit = false;

  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.resize(hash);
    auto tok = split_ws(line);
    if (tok.empty())
      continue;
    std::string const &key = tok[0];
    if (key == "type") {
      if (tok.size() != 2 || tok[1] != rs.type().name())
        throw ParseError(path + ": type does not match " + rs.type().name());
    } else if (key == "label" && tok.size() == 2) {
      wc.label = tok[1];
    } else if (key == "mod" && tok.size() == 3) {
      conds.push_back({parse_coweight(tok[1], rs.rank()), std::stoi(tok[2])});
    } else if (key == "eq" && tok.size() == 2) {
      conds.push_back({parse_coweight(tok[1], rs.rank()), 0});
    } else if (key == "also") {
      for (std::size_t k = 1; k < tok.size(); ++k)
        extra.push_back(rs.parse(tok[k]));
    } else if (key == "roots") {
      have_explicit = true;
      for (std::size_t k = 1; k < tok.size(); ++k)
        explicit_roots.push_back(rs.parse(tok[k]));
    } else if (key == "witness") {
      for (std::size_t k = 1; k < tok.size(); ++k)
        wc.witnesses.push_back(rs.parse(tok[k]));
    } else if (key == "expect" && tok.size() == 2) {
      wc.expect = std::stoi(tok[1]);
    } else {
      throw ParseError(path + ": cannot read line '" + line + "'");
    }
  }

  if (have_explicit) {
    wc.positive = explicit_roots;
  } else {
    for (int a = 0; a < rs.num_pos(); ++a) {
      bool ok = true;
      for (auto const &c : conds) {
        int v = rs.pairing(c.lam, a);
        if (c.mod == 0 ? v != 0 : v % c.mod != 0) {
          ok = false;
          break;
        }
      }
      if (ok)
        wc.positive.push_back(a);
    }
  }
  wc.positive.insert(wc.positive.end(), extra.begin(), extra.end());
  std::sort(wc.positive.begin(), wc.positive.end());
  wc.positive.erase(std::unique(wc.positive.begin(), wc.positive.end()),
                    wc.positive.end());
  return wc;
}

std::vector<std::string> witness_files(std::string const &dir,
                                       RootSystemType t)
{
  std::vector<std::string> res;
  std::string prefix = t.name() + "_";
  for (auto const &e : std::filesystem::directory_iterator(dir)) {
    std::string f = e.path().filename().string();
    if (f.rfind(prefix, 0) == 0 && e.path().extension() == ".txt")
      res.push_back(e.path().string());
  }
  std::sort(res.begin(), res.end());
  return res;
}

WeylElement weyl_expr(Weyl const &W, std::string const &text)
{
  RootSystem const &rs = W.roots();
  WeylElement w = W.identity();
  for (auto const &f : split_ws(text)) {
    WeylElement x;
    if (f == "w0") {
      x = W.w0();
    } else if (f.size() >= 3 && f[0] == 'w' && f[1] == '[' &&
               f.back() == ']') {
      std::vector<int> nodes;
      for (std::size_t k = 2; k + 1 < f.size(); ++k)
        nodes.push_back(f[k] - '0');
      for (int i : nodes)
        if (i < 1 || i > rs.rank())
          throw ParseError("node out of range in '" + f + "'");
      x = W.longest(node_set(nodes));
    } else if (f.size() >= 2 && f[0] == 's') {
      std::string digits = f.substr(1);
      if (digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("cannot read Weyl factor '" + f + "'");
      int i = std::stoi(digits);
      if (i < 1 || i > rs.rank())
        throw ParseError("node out of range in '" + f + "'");
      x = W.s(i - 1);
    } else if (f.size() >= 2 && f[0] == 'r') {
      x = W.reflection(rs.parse(f.substr(1)));
    } else {
      throw ParseError("cannot read Weyl factor '" + f + "'");
    }
    w = W.mul(w, x);
  }
  return w;
}

std::vector<PinFixture> pin_fixtures(RootSystemType t)
{
  std::string n = t.name();
  if (n == "E6")
    return {{"2E6;1", "", "", true},
            {"2E6;2", "", "w0 w[23456]", false},
            {"2E6;4", "", "w0", false}};
  if (n == "E7")
    return {{"E7;1", "", "", true},
            {"E7;2", "", "s7 w0 w[123456]", false},
            {"E7;3", "", "w0 w[123456]", false},
            {"E7;4", "s1", "r2234321", false},
            {"E7;7", "", "w0", false}};
  if (n == "E8")
    return {{"E8;1", "", "", true},
            {"E8;2", "r00111111", "s4 s5 s6 s7 s8 r23465432", false},
            {"E8;4", "s8", "r23465432", false},
            {"E8;8", "", "w0", false}};
  if (n == "F4")
    return {{"F4;1^1", "", "", true},
            {"F4;2", "", "", true},
            {"F4;4", "", "w0", false}};
  if (n == "G2")
    return {{"G2;1^2", "", "", true}, {"G2;2", "", "w0", false}};
  throw UnsupportedType(n + " has no pinning fixtures");
}

namespace
{

std::vector<WeylElement> all_elements(Weyl const &W)
{
  if (W.roots().num_pos() > 24)
    throw PlanTooLarge("exhaustive Weyl group search needs F4 or G2");
  return W.min_coset_reps(0);
}

// w1 with phi in Phi(w1): invert a chain phi -> alpha_i -> -alpha_i
WeylElement chain_w1(Weyl const &W, int root)
{
  RootSystem const &rs = W.roots();
  WeylElement v = W.identity();
  int cur = root;
  while (rs.positive(cur)) {
    int j = 0;
    while (rs.coroot_pairing(cur, rs.simple(j)) <= 0)
      ++j;
    v = W.s_mul(j, v);
    cur = W.s(j)(cur);
  }
  return W.inverse(v);
}

} // namespace

WeylElement search_w1(Weyl const &W, std::vector<int> const &A)
{
  RootSystem const &rs = W.roots();
  std::vector<int> up = rs.closure_up(A);
  std::vector<int> need;
  for (int a : up)
    need.push_back(rs.neg(W.w0()(a)));

  if (rs.num_pos() > 24) {
    if (need.size() == 1)
      return chain_w1(W, need[0]);
    throw PlanTooLarge("w1 search in " + rs.type().name() +
                       " needs a single root");
  }

  std::optional<WeylElement> best;
  int best_d = 0, best_l = 0;
  for (auto const &w : all_elements(W)) {
    auto wi = W.inverse(w);
    bool ok = true;
    for (int b : need)
      if (rs.positive(wi(b))) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    int d = W.length(W.demazure(w, wi));
    int l = W.length(w);
    if (!best || d < best_d || (d == best_d && l < best_l) ||
        (d == best_d && l == best_l && W.key(w) < W.key(*best))) {
      best = w;
      best_d = d;
      best_l = l;
    }
  }
  if (!best)
    throw W1DoesNotDominate("no w1 inverts the required roots");
  return *best;
}

PinBound pin_bound(Weyl const &W, PinFixture const &fx)
{
  RootSystem const &rs = W.roots();
  Diagram d = find_diagram(rs.type(), fx.diagram);
  auto seq = polar_closed_sequence(rs, d);
  if (!seq)
    throw NotGeneric(d.name + " is not polar closed");

  auto conjugated = [&](WeylElement const &v) {
    std::optional<std::vector<int>> roots(std::vector<int>{});
    WeylElement vi = W.inverse(v);
    for (int a : *seq) {
      int b = vi(a);
      if (!rs.positive(b))
        return std::optional<std::vector<int>>();
      roots->push_back(b);
    }
    return roots;
  };

  PinBound pb;
  if (!fx.search) {
    pb.conj = weyl_expr(W, fx.conj);
    auto roots = conjugated(pb.conj);
    if (!roots)
      throw W1DoesNotDominate("conjugator makes a root negative");
    pb.roots = *roots;
    pb.w1 = weyl_expr(W, fx.w1);
    pb.bound = displacement_upper_standard(W, pb.roots, pb.w1);
    return pb;
  }

  std::vector<WeylElement> conjs{W.identity()};
  if (rs.num_pos() <= 24 && seq->size() > 1)
    conjs = all_elements(W);
  bool found = false;
  for (auto const &v : conjs) {
    auto roots = conjugated(v);
    if (!roots)
      continue;
    WeylElement w1 = search_w1(W, *roots);
    UpperBound ub = displacement_upper_standard(W, *roots, w1);
    if (!found || ub.bound < pb.bound.bound) {
      pb.conj = v;
      pb.roots = *roots;
      pb.w1 = w1;
      pb.bound = ub;
      found = true;
    }
  }
  return pb;
}

} // namespace chev
