#ifndef GUARD_CHEV_SCAN_H
#define GUARD_CHEV_SCAN_H

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "groupnf.h"
#include "oppo.h"

namespace chev
{

enum class Strategy
{
  FullChambers,
  OppositeSphere,
  Sampled
};

Strategy parse_strategy(std::string const &s);
std::string strategy_name(Strategy s);

// cell key -> number of chambers, sorted by key
using CellCounts = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

void merge_counts(CellCounts &into, CellCounts const &from);

template<typename F>
struct ScanPlan
{
  Word<F> theta;
  std::string label; // identifies the plan in checkpoint files
  Strategy strategy = Strategy::OppositeSphere;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string checkpoint;
};

struct ScanReport
{
  std::vector<std::pair<WeylElement, std::uint64_t>> cells;
  std::uint64_t chambers = 0;
  int displacement = 0;
  NodeSet type = 0;
  std::optional<bool> capped;
  std::optional<Diagram> diagram;
  bool exhaustive = false;
  bool red2 = false;
  std::string red2_reason;
  std::size_t states = 0;
};

// Checkpoint file: a header naming the plan, then one line per finished
// prefix.  Lines written by an interrupted run are read back on restart.
class Checkpoint
{
public:
  Checkpoint(std::string path, std::string header);

  bool done(std::uint64_t prefix) const
  { return _done.count(prefix) != 0; }

  CellCounts const &counts(std::uint64_t prefix) const
  { return _done.at(prefix); }

  void record(std::uint64_t prefix, CellCounts const &c);

private:
  std::string _path;
  std::unordered_map<std::uint64_t, CellCounts> _done;
  std::mutex _m;
};

ScanReport finish_report(Weyl const &W, CellCounts const &counts,
                         bool exhaustive);

namespace detail
{

template<typename F>
class Scanner
{
public:
  using NF = NormalForm<F>;

  Scanner(Engine<F> const &eng, Word<F> const &theta, WeylElement const &w)
    : _eng(eng), _rs(eng.context().rs), _lift(eng.lift(w)),
      _lift_inv(eng.inverse(_lift))
  {
    for (int a : eng.context().weyl.inversion_set(w))
      _roots.push_back(a);
    std::sort(_roots.begin(), _roots.end());
    _memo.resize(_roots.size() + 1);
    _start = eng.normalize(theta);
  }

  std::size_t levels() const
  { return _roots.size(); }

  NF const &start() const
  { return _start; }

  std::size_t states() const
  {
    std::size_t n = 0;
    for (auto const &m : _memo)
      n += m.size();
    return n;
  }

  // x_b(-c) g x_b(c) for the root at level k
  NF step(NF const &g, std::size_t k, F const &c) const
  {
    if (c.is_zero())
      return g;
    int b = _roots[k];
    if (unipotent(g)) {
      NF h = g;
      h.up = _eng.conjugate(g.up, b, c);
      return h;
    }
    Word<F> word{Token<F>::x(b, -c)};
    Word<F> body = _eng.to_word(g);
    word.insert(word.end(), body.begin(), body.end());
    word.push_back(Token<F>::x(b, c));
    return _eng.normalize(word);
  }

  std::uint64_t leaf(NF const &g)
  {
    std::string k = key(g);
    auto it = _leaf.find(k);
    if (it != _leaf.end())
      return it->second;
    Word<F> word = _lift_inv;
    Word<F> body = _eng.to_word(g);
    word.insert(word.end(), body.begin(), body.end());
    word.insert(word.end(), _lift.begin(), _lift.end());
    std::uint64_t c = _eng.context().weyl.key(_eng.cell(word));
    _leaf.emplace(std::move(k), c);
    return c;
  }

  CellCounts dfs(std::size_t k, NF const &g)
  {
    if (k == _roots.size())
      return {{leaf(g), 1}};
    std::string kk = key(g);
    auto it = _memo[k].find(kk);
    if (it != _memo[k].end())
      return it->second;
    CellCounts res;
    for (unsigned e = 0; e < F::order; ++e)
      merge_counts(res, dfs(k + 1, step(g, k, F::element(e))));
    _memo[k].emplace(std::move(kk), res);
    return res;
  }

private:
  Engine<F> const &_eng;
  RootSystem const &_rs;
  Word<F> _lift, _lift_inv;
  std::vector<int> _roots;
  NF _start;
  std::vector<std::unordered_map<std::string, CellCounts>> _memo;
  std::unordered_map<std::string, std::uint64_t> _leaf;

  static bool unipotent(NF const &g)
  {
    for (auto const &x : g.u)
      if (!x.is_zero())
        return false;
    for (auto const &x : g.chi)
      if (!x.is_one())
        return false;
    for (std::size_t k = 0; k < g.w.perm.size(); ++k)
      if (g.w.perm[k] != k)
        return false;
    return true;
  }

  std::string key(NF const &g) const
  {
    std::string s;
    s.reserve(2 * g.u.size() + g.w.perm.size() + g.chi.size() + 1);
    for (auto const &x : g.u)
      s.push_back(char(x.index()));
    s.append(g.w.perm.begin(), g.w.perm.end());
    for (auto const &x : g.chi)
      s.push_back(char(x.index()));
    for (auto const &x : g.up)
      s.push_back(char(x.index()));
    return s;
  }
};

} // namespace detail

// Whether the sphere opposite a chamber carries the displacement: panels
// have at least 4 chambers, or theta is an involution.
template<typename F>
std::pair<bool, std::string> red2_applicable(Engine<F> const &eng,
                                             Word<F> const &theta)
{
  if (F::order >= 3)
    return {true, "panels have at least 4 chambers"};
  Word<F> sq = theta;
  sq.insert(sq.end(), theta.begin(), theta.end());
  if (eng.same_element(sq, {}))
    return {true, "theta is an involution"};
  return {false, "panels have 3 chambers and theta is not an involution"};
}

template<typename F>
ScanReport scan_displacement(Context const &ctx, ScanPlan<F> const &plan)
{
  static_assert(F::finite, "scans need a finite field");
  Engine<F> eng(ctx);
  Weyl const &W = ctx.weyl;
  RootSystem const &rs = ctx.rs;
  double q = F::order;
  auto [red2, reason] = red2_applicable(eng, plan.theta);

  CellCounts total;
  std::size_t states = 0;

  if (plan.strategy == Strategy::FullChambers) {
    auto elements = W.min_coset_reps(0);
    double size = 0;
    for (auto const &w : elements)
      size += std::pow(q, W.length(w));
    if (size > 1e4)
      throw PlanTooLarge("full chamber scan needs " +
                         std::to_string(std::llround(size)) +
                         " chambers; use opposite_sphere or sampled");
    for (auto const &w : elements) {
      detail::Scanner<F> sc(eng, plan.theta, w);
      merge_counts(total, sc.dfs(0, sc.start()));
      states += sc.states();
    }
  } else if (plan.strategy == Strategy::OppositeSphere) {
    if (std::pow(q, rs.num_pos()) > double(1 << 24))
      throw PlanTooLarge("opposite sphere has " + std::to_string(F::order) +
                         "^" + std::to_string(rs.num_pos()) +
                         " chambers; use sampled");
    if (!red2)
      throw Red2Unavailable(reason + "; use full_chambers");

    int threads = std::max(1, plan.threads);
    std::size_t split = 0;
    if (threads > 1 || !plan.checkpoint.empty()) {
      double want = 16.0 * threads;
      while (split < std::size_t(rs.num_pos()) && std::pow(q, split) < want)
        ++split;
    }
    std::uint64_t prefixes = std::llround(std::pow(q, split));
    std::optional<Checkpoint> cp;
    if (!plan.checkpoint.empty())
      cp.emplace(plan.checkpoint, rs.type().name() + " q=" +
                                    std::to_string(F::order) + " split=" +
                                    std::to_string(split) + " " + plan.label);

    std::vector<CellCounts> partial(threads);
    std::vector<std::size_t> nstates(threads, 0);
    auto work = [&](int t) {
      detail::Scanner<F> sc(eng, plan.theta, W.w0());
      for (std::uint64_t p = t; p < prefixes; p += threads) {
        if (cp && cp->done(p)) {
          merge_counts(partial[t], cp->counts(p));
          continue;
        }
        auto g = sc.start();
        std::uint64_t rest = p;
        for (std::size_t k = 0; k < split; ++k) {
          g = sc.step(g, k, F::element(unsigned(rest % F::order)));
          rest /= F::order;
        }
        CellCounts c = sc.dfs(split, g);
        if (cp)
          cp->record(p, c);
        merge_counts(partial[t], c);
      }
      nstates[t] = sc.states();
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back(work, t);
      for (auto &th : pool)
        th.join();
    }
    for (int t = 0; t < threads; ++t) {
      merge_counts(total, partial[t]);
      states += nstates[t];
    }
  } else {
    std::mt19937_64 rng(plan.seed);
    detail::Scanner<F> sc(eng, plan.theta, W.w0());
    for (std::size_t s = 0; s < plan.samples; ++s) {
      auto g = sc.start();
      for (std::size_t k = 0; k < sc.levels(); ++k)
        g = sc.step(g, k, random_scalar<F>(rng, false));
      merge_counts(total, {{sc.leaf(g), 1}});
    }
  }

  bool exhaustive = plan.strategy != Strategy::Sampled;
  ScanReport r = finish_report(W, total, exhaustive);
  r.red2 = red2;
  r.red2_reason = reason;
  r.states = states;
  return r;
}

// A vertex of type J: the coset u w P_{S\J}, w minimal in w W_{S\J},
// u over Phi(w) in canonical order.
template<typename F>
struct Vertex
{
  WeylElement w;
  std::vector<F> u;
};

template<typename F>
Word<F> vertex_word(Engine<F> const &eng, Vertex<F> const &v)
{
  Word<F> word;
  for (std::size_t b = 0; b < v.u.size(); ++b)
    if (!v.u[b].is_zero())
      word.push_back(Token<F>::x(int(b), v.u[b]));
  Word<F> l = eng.lift(v.w);
  word.insert(word.end(), l.begin(), l.end());
  return word;
}

template<typename F>
std::vector<Vertex<F>> enumerate_vertices(Context const &ctx, NodeSet J,
                                          std::size_t budget = 1000000)
{
  static_assert(F::finite, "vertex enumeration needs a finite field");
  Weyl const &W = ctx.weyl;
  NodeSet K = all_nodes(W.rank()) & ~J;
  auto reps = W.min_coset_reps(K);
  double size = 0;
  for (auto const &w : reps)
    size += std::pow(double(F::order), W.length(w));
  if (size > double(budget))
    throw PlanTooLarge("too many vertices to enumerate");

  std::vector<Vertex<F>> res;
  int N = ctx.rs.num_pos();
  for (auto const &w : reps) {
    auto roots = W.inversion_set(w);
    std::sort(roots.begin(), roots.end());
    std::vector<unsigned> digits(roots.size(), 0);
    for (;;) {
      Vertex<F> v{w, std::vector<F>(N)};
      for (std::size_t k = 0; k < roots.size(); ++k)
        v.u[roots[k]] = F::element(digits[k]);
      res.push_back(std::move(v));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == F::order)
        digits[k++] = 0;
      if (k == digits.size())
        break;
    }
  }
  return res;
}

// Canonical key of the vertex g P_{S\J}.
template<typename F>
std::string vertex_key(Engine<F> const &eng, Word<F> const &g, NodeSet J)
{
  Weyl const &W = eng.context().weyl;
  NodeSet K = all_nodes(W.rank()) & ~J;
  auto nf = eng.normalize(g);
  Vertex<F> v{W.double_coset_rep(nf.w, 0, K), nf.u};
  auto nf2 = eng.normalize(vertex_word(eng, v));
  std::string s(v.w.perm.begin(), v.w.perm.end());
  for (auto const &x : nf2.u)
    s.push_back(char(x.index()));
  return s;
}

enum class FixedStructure
{
  BallPoint,
  BallLine,
  LargeFullSubhexagon,
  Dist3Ovoid,
  Dist3Spread,
  Other
};

std::string fixed_structure_name(FixedStructure f);

struct FixedStructureReport
{
  FixedStructure kind = FixedStructure::Other;
  std::size_t points = 0, lines = 0;
  std::size_t fixed_points = 0, fixed_lines = 0;
};

// Classifies the fixed elements of the hexagon with points of type {2}
// and lines of type {1}, given the incidence graph and fixed flags.
FixedStructureReport
classify_fixed_graph(std::vector<std::vector<int>> const &adj,
                     std::vector<char> const &is_point,
                     std::vector<char> const &fixed);

template<typename F>
FixedStructureReport classify_fixed_structure_g2(Context const &ctx,
                                                 Word<F> const &theta)
{
  if (!(ctx.rs.type() == RootSystemType{Series::G, 2}))
    throw UnsupportedGeometry("fixed structures are classified for G2 only");
  if constexpr (!F::finite)
    throw UnsupportedGeometry("fixed structures need a finite field");
  else {
    if (F::order > 4)
      throw UnsupportedGeometry("fixed structures need a field of order <= 4");
    Engine<F> eng(ctx);
    NodeSet PT = node_bit(1), LT = node_bit(0);

    std::unordered_map<std::string, int> id;
    std::vector<Word<F>> rep;
    std::vector<char> is_point;
    auto node = [&](Word<F> const &g, bool point) {
      std::string k = std::string(1, point ? 'p' : 'l') +
                       vertex_key(eng, g, point ? PT : LT);
      auto [it, fresh] = id.emplace(k, int(rep.size()));
      if (fresh) {
        rep.push_back(g);
        is_point.push_back(point);
      }
      return it->second;
    };

    std::vector<std::pair<int, int>> edges;
    for (auto const &c : enumerate_vertices<F>(ctx, all_nodes(2))) {
      Word<F> g = vertex_word(eng, c);
      edges.emplace_back(node(g, true), node(g, false));
    }
    std::vector<std::vector<int>> adj(rep.size());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [p, l] : edges) {
      adj[p].push_back(l);
      adj[l].push_back(p);
    }

    std::vector<char> fixed(rep.size(), 0);
    for (std::size_t v = 0; v < rep.size(); ++v) {
      Word<F> g = theta;
      g.insert(g.end(), rep[v].begin(), rep[v].end());
      std::string k = std::string(1, is_point[v] ? 'p' : 'l') +
                       vertex_key(eng, g, is_point[v] ? PT : LT);
      auto it = id.find(k);
      fixed[v] = it != id.end() && it->second == int(v);
    }
    return classify_fixed_graph(adj, is_point, fixed);
  }
}

// For every minimal v in W/W_{S\{1}} of F4, v^{-1} maps the roots of
// heights 8 to 11 into Phi^+, Phi_{234} or {-1000, -1100, -1110, -2342}.
bool verify_barbara2(Weyl const &W);

} // namespace chev

#endif // GUARD_CHEV_SCAN_H
