#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "chev/scan.h"

namespace chev
{

Strategy parse_strategy(std::string const &s)
{
  if (s == "full_chambers" || s == "full")
    return Strategy::FullChambers;
  if (s == "opposite_sphere" || s == "sphere")
    return Strategy::OppositeSphere;
  if (s == "sampled")
    return Strategy::Sampled;
  throw ParseError("unknown strategy '" + s + "'");
}

std::string strategy_name(Strategy s)
{
  switch (s) {
    case Strategy::FullChambers:
      return "full_chambers";
    case Strategy::OppositeSphere:
      return "opposite_sphere";
    case Strategy::Sampled:
      return "sampled";
  }
  return "";
}

void merge_counts(CellCounts &into, CellCounts const &from)
{
  if (from.empty())
    return;
  if (into.empty()) {
    into = from;
    return;
  }
  CellCounts res;
  res.reserve(into.size() + from.size());
  std::size_t i = 0, j = 0;
  while (i < into.size() || j < from.size()) {
    if (j == from.size() ||
        (i < into.size() && into[i].first < from[j].first))
      res.push_back(into[i++]);
    else if (i == into.size() || from[j].first < into[i].first)
      res.push_back(from[j++]);
    else {
      res.emplace_back(into[i].first, into[i].second + from[j].second);
      ++i;
      ++j;
    }
  }
  into.swap(res);
}

Checkpoint::Checkpoint(std::string path, std::string header)
  : _path(std::move(path))
{
  {
    std::ifstream in(_path);
    std::string line;
    if (in && std::getline(in, line) && line == header) {
      // a line cut short by an interrupted write lacks the final ';'
      while (std::getline(in, line)) {
        if (line.empty() || line.back() != ';')
          continue;
        line.pop_back();
        std::istringstream ls(line);
        std::uint64_t prefix;
        if (!(ls >> prefix))
          continue;
        CellCounts c;
        std::string item;
        while (ls >> item) {
          auto colon = item.find(':');
          if (colon == std::string::npos)
            break;
          c.emplace_back(std::stoull(item.substr(0, colon)),
                         std::stoull(item.substr(colon + 1)));
        }
        _done[prefix] = c;
      }
      return;
    }
  }
  std::ofstream out(_path, std::ios::trunc);
  if (!out)
    throw ParseError("cannot write checkpoint " + _path);
  out << header << '\n';
}

void Checkpoint::record(std::uint64_t prefix, CellCounts const &c)
{
  std::lock_guard<std::mutex> lock(_m);
  std::ofstream out(_path, std::ios::app);
  out << prefix;
  for (auto const &[k, n] : c)
    out << ' ' << k << ':' << n;
  out << ";\n";
}

ScanReport finish_report(Weyl const &W, CellCounts const &counts,
                         bool exhaustive)
{
  ScanReport r;
  r.exhaustive = exhaustive;
  std::vector<WeylElement> attained;
  for (auto const &[k, n] : counts) {
    WeylElement w = W.from_key(k);
    r.cells.emplace_back(w, n);
    r.chambers += n;
    r.displacement = std::max(r.displacement, W.length(w));
    attained.push_back(w);
  }
  std::stable_sort(r.cells.begin(), r.cells.end(),
                   [&](auto const &a, auto const &b) {
                     return W.length(a.first) < W.length(b.first);
                   });
  r.type = forced_types(W, attained);

  RootSystemType t = W.roots().type();
  if (exhaustive) {
    if (r.type == 0) {
      r.capped = r.displacement == 0;
    } else {
      bool capped = false;
      for (auto const &w : attained)
        if (simplices_opposite(W, w, r.type, W.pi0(r.type)))
          capped = true;
      r.capped = capped;
    }
    r.diagram = diagram_with_nodes(t, r.type);
  } else {
    try {
      r.diagram = pin_diagram(W, attained, W.roots().num_pos());
    } catch (Inconsistent const &) {
      r.diagram.reset();
    }
  }
  return r;
}

std::string fixed_structure_name(FixedStructure f)
{
  switch (f) {
    case FixedStructure::BallPoint:
      return "ball_point";
    case FixedStructure::BallLine:
      return "ball_line";
    case FixedStructure::LargeFullSubhexagon:
      return "large_full_subhexagon";
    case FixedStructure::Dist3Ovoid:
      return "dist3_ovoid";
    case FixedStructure::Dist3Spread:
      return "dist3_spread";
    case FixedStructure::Other:
      return "other";
  }
  return "";
}

namespace
{

std::vector<int> bfs(std::vector<std::vector<int>> const &adj,
                     std::vector<int> const &sources)
{
  std::vector<int> d(adj.size(), -1);
  std::deque<int> queue;
  for (int s : sources) {
    d[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int x : adj[v])
      if (d[x] < 0) {
        d[x] = d[v] + 1;
        queue.push_back(x);
      }
  }
  return d;
}

bool within(std::vector<int> const &d, int radius)
{
  for (int x : d)
    if (x < 0 || x > radius)
      return false;
  return true;
}

} // namespace

FixedStructureReport
classify_fixed_graph(std::vector<std::vector<int>> const &adj,
                     std::vector<char> const &is_point,
                     std::vector<char> const &fixed)
{
  int n = int(adj.size());
  FixedStructureReport r;
  std::vector<int> fp, fl, all_fixed;
  for (int v = 0; v < n; ++v) {
    (is_point[v] ? r.points : r.lines)++;
    if (fixed[v]) {
      (is_point[v] ? fp : fl).push_back(v);
      all_fixed.push_back(v);
    }
  }
  r.fixed_points = fp.size();
  r.fixed_lines = fl.size();
  if (all_fixed.empty())
    return r;

  for (int c : all_fixed) {
    auto d = bfs(adj, {c});
    bool ball = true;
    for (int v = 0; v < n && ball; ++v)
      if (bool(fixed[v]) != (d[v] >= 0 && d[v] <= 3))
        ball = false;
    if (ball) {
      r.kind = is_point[c] ? FixedStructure::BallPoint
                           : FixedStructure::BallLine;
      return r;
    }
  }

  bool large = within(bfs(adj, all_fixed), 3);
  auto opposite_set = [&](std::vector<int> const &s) {
    for (int a : s) {
      auto d = bfs(adj, {a});
      for (int b : s)
        if (b != a && d[b] != 6)
          return false;
    }
    return true;
  };
  if (fl.empty() && large && opposite_set(fp)) {
    r.kind = FixedStructure::Dist3Ovoid;
    return r;
  }
  if (fp.empty() && large && opposite_set(fl)) {
    r.kind = FixedStructure::Dist3Spread;
    return r;
  }

  if (!fp.empty() && !fl.empty() && large) {
    bool full = true, sub = true;
    for (int l : fl) {
      int on = 0;
      for (int p : adj[l]) {
        if (!fixed[p])
          full = false;
        else
          ++on;
      }
      if (on < 2)
        sub = false;
    }
    for (int p : fp) {
      int through = 0;
      for (int l : adj[p])
        through += fixed[l];
      if (through < 2)
        sub = false;
    }
    if (full && sub)
      r.kind = FixedStructure::LargeFullSubhexagon;
  }
  return r;
}

bool verify_barbara2(Weyl const &W)
{
  RootSystem const &rs = W.roots();
  if (!(rs.type() == RootSystemType{Series::F, 4}))
    throw UnsupportedType("barbara2 is a statement about F4");
  NodeSet C3 = node_set({2, 3, 4});
  auto reps = W.min_coset_reps(C3);
  if (reps.size() != 24)
    return false;

  std::vector<int> top;
  for (int a = 0; a < rs.num_pos(); ++a)
    if (rs.height(a) >= 8)
      top.push_back(a);
  if (top.size() != 4)
    return false;

  std::vector<int> allowed;
  for (auto s : {"1000", "1100", "1110", "2342"})
    allowed.push_back(rs.neg(rs.parse(s)));

  for (auto const &v : reps) {
    WeylElement vi = W.inverse(v);
    for (int a : top) {
      int b = vi(a);
      if (rs.positive(b))
        continue;
      if ((rs.support(rs.neg(b)) & ~C3) == 0)
        continue;
      if (std::find(allowed.begin(), allowed.end(), b) == allowed.end())
        return false;
    }
  }
  return true;
}

} // namespace chev
