#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "chev/errors.h"
#include "chev/rootsys.h"

namespace chev
{

NodeSet all_nodes(int rank)
{ return (NodeSet(1) << rank) - 1; }

std::vector<int> node_list(NodeSet s)
{
  std::vector<int> res;
  for (int i = 0; s >> i; ++i)
    if (has_node(s, i))
      res.push_back(i);
  return res;
}

NodeSet node_set(std::vector<int> const &one_based)
{
  NodeSet s = 0;
  for (int i : one_based)
    s |= node_bit(i - 1);
  return s;
}

std::string nodes_str(NodeSet s)
{
  std::string res = "{";
  bool first = true;
  for (int i : node_list(s)) {
    if (!first)
      res += ",";
    res += std::to_string(i + 1);
    first = false;
  }
  return res + "}";
}

std::string RootSystemType::name() const
{
  static char const letters[] = "ABCDEFG";
  return std::string(1, letters[int(series)]) + std::to_string(rank);
}

bool RootSystemType::buildable() const
{
  switch (series) {
    case Series::E:
      return rank >= 6 && rank <= 8;
    case Series::F:
      return rank == 4;
    case Series::G:
      return rank == 2;
    default:
      return false;
  }
}

RootSystemType RootSystemType::parse(std::string const &s)
{
  if (s.size() < 2)
    throw UnsupportedType("bad type '" + s + "'");

  static std::string const letters = "ABCDEFG";
  auto pos = letters.find(char(std::toupper(s[0])));
  if (pos == std::string::npos)
    throw UnsupportedType("bad type '" + s + "'");

  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw UnsupportedType("bad type '" + s + "'");
    rank = rank * 10 + (s[i] - '0');
  }
  Series series = Series(pos);
  bool ok = rank >= 1;
  switch (series) {
    case Series::B:
    case Series::C: ok = rank >= 2; break;
    case Series::D: ok = rank >= 4; break;
    case Series::E: ok = rank >= 6 && rank <= 8; break;
    case Series::F: ok = rank == 4; break;
    case Series::G: ok = rank == 2; break;
    default: break;
  }
  if (!ok)
    throw UnsupportedType("bad type '" + s + "'");

  return {series, rank};
}

PolarData classical_polar_data(RootSystemType t)
{
  PolarData pd;
  int n = t.rank;
  auto set = [](std::vector<int> v) { return node_set(v); };

  switch (t.series) {
    case Series::A:
      pd.polar = pd.dual_polar = n == 1 ? set({1}) : set({1, n});
      pd.has_dual_polar = true;
      if (n >= 3) {
        pd.copolar = set({2, n - 1});
        pd.has_copolar = true;
      }
      break;
    case Series::B:
      pd.polar = set({2});
      pd.dual_polar = set({1});
      pd.has_dual_polar = true;
      break;
    case Series::C:
      pd.polar = set({1});
      pd.dual_polar = set({2});
      pd.copolar = set({2});
      pd.has_dual_polar = pd.has_copolar = true;
      break;
    case Series::D:
      pd.polar = pd.dual_polar = set({2});
      pd.has_dual_polar = true;
      break;
    default:
      return RootSystem(t).polar_data();
  }
  return pd;
}

std::int64_t RootSystem::key(Root const &r)
{
  std::int64_t k = 0;
  for (int c : r)
    k = k * 16 + (c + 8);
  return k * 16 + std::int64_t(r.size());
}

RootSystem::RootSystem(RootSystemType t) : _type(t), _rank(t.rank)
{
  if (!t.buildable())
    throw UnsupportedType(t.name() + " is not an ambient type");

  int n = _rank;
  _form.assign(n * n, 0);

  auto edge = [&](int i, int j, int v) {
    _form[(i - 1) * n + (j - 1)] = v;
    _form[(j - 1) * n + (i - 1)] = v;
  };

  if (t.series == Series::E) {
    for (int i = 0; i < n; ++i)
      _form[i * n + i] = 2;
    edge(1, 3, -1);
    edge(2, 4, -1);
    for (int i = 3; i < n; ++i)
      edge(i, i + 1, -1);
  } else if (t.series == Series::F) {
    _form[0] = _form[5] = 4;
    _form[10] = _form[15] = 2;
    edge(1, 2, -2);
    edge(2, 3, -2);
    edge(3, 4, -1);
  } else {
    _form[0] = 2;
    _form[3] = 6;
    edge(1, 2, -3);
  }

  _cartan.assign(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      _cartan[i * n + j] = 2 * _form[i * n + j] / _form[j * n + j];

  // grow positive roots by height using root strings
  std::vector<Root> pos;
  std::map<Root, int> seen;
  for (int i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    seen[r] = int(pos.size());
    pos.push_back(r);
  }

  for (std::size_t k = 0; k < pos.size(); ++k) {
    Root beta = pos[k];
    for (int i = 0; i < n; ++i) {
      int p = 0;
      Root down = beta;
      for (;;) {
        down[i] -= 1;
        if (!seen.count(down))
          break;
        ++p;
      }
      int pair = 0;
      for (int j = 0; j < n; ++j)
        pair += beta[j] * _cartan[j * n + i];
      if (p - pair > 0) {
        Root up = beta;
        up[i] += 1;
        if (!seen.count(up)) {
          seen[up] = int(pos.size());
          pos.push_back(up);
        }
      }
    }
  }

  auto ht = [](Root const &r) {
    int h = 0;
    for (int c : r)
      h += c;
    return h;
  };

  std::sort(pos.begin(), pos.end(), [&](Root const &a, Root const &b) {
    int ha = ht(a), hb = ht(b);
    if (ha != hb)
      return ha < hb;
    return a > b;
  });

  _npos = int(pos.size());
  _roots = pos;
  for (auto const &r : pos) {
    Root m = r;
    for (auto &c : m)
      c = -c;
    _roots.push_back(m);
  }

  int R = num_roots();
  for (int a = 0; a < R; ++a) {
    _lookup[key(_roots[a])] = a;
    _height.push_back(ht(_roots[a]));
  }

  _simple.resize(n);
  for (int i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    _simple[i] = index(r);
  }

  _inner.assign(R * R, 0);
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) {
      int s = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += _roots[a][i] * _form[i * n + j] * _roots[b][j];
      _inner[a * R + b] = s;
    }

  _sum.assign(R * R, -1);
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) {
      Root s(n);
      for (int i = 0; i < n; ++i)
        s[i] = _roots[a][i] + _roots[b][i];
      _sum[a * R + b] = index(s);
    }

  _long_norm = 0;
  _short_norm = 1 << 30;
  for (int a = 0; a < _npos; ++a) {
    _long_norm = std::max(_long_norm, norm(a));
    _short_norm = std::min(_short_norm, norm(a));
  }

  _highest = _npos - 1;
  if (!simply_laced())
    for (int a = 0; a < _npos; ++a)
      if (!is_long(a))
        _highest_short = a;
}

int RootSystem::index(Root const &r) const
{
  if (int(r.size()) != _rank)
    return -1;
  auto it = _lookup.find(key(r));
  return it == _lookup.end() ? -1 : it->second;
}

int RootSystem::index_or_throw(Root const &r) const
{
  if (int(r.size()) != _rank)
    throw DimensionMismatch("root has " + std::to_string(r.size()) +
                            " coefficients, expected " +
                            std::to_string(_rank));
  int idx = index(r);
  if (idx < 0) {
    std::string s;
    for (int c : r)
      s += std::to_string(c) + " ";
    throw NotARoot("(" + s + ") is not a root of " + _type.name());
  }
  return idx;
}

int RootSystem::simple_node(int idx) const
{
  for (int i = 0; i < _rank; ++i)
    if (_simple[i] == idx)
      return i;
  return -1;
}

int RootSystem::coroot_pairing(int beta, int alpha) const
{ return 2 * inner(beta, alpha) / norm(alpha); }

std::vector<int> RootSystem::coroot_coeffs(int alpha) const
{
  std::vector<int> c(_rank);
  for (int i = 0; i < _rank; ++i)
    c[i] = coeff(alpha, i) * _form[i * _rank + i] / norm(alpha);
  return c;
}

int RootSystem::pairing(Coweight const &lambda, int alpha) const
{
  if (int(lambda.size()) != _rank)
    throw DimensionMismatch("coweight has " + std::to_string(lambda.size()) +
                            " coordinates, expected " +
                            std::to_string(_rank));
  int s = 0;
  for (int i = 0; i < _rank; ++i)
    s += lambda[i] * coeff(alpha, i);
  return s;
}

Coweight RootSystem::fundamental_coweight(int i) const
{
  Coweight w(_rank, 0);
  w[i] = 1;
  return w;
}

bool RootSystem::in_span(int idx, NodeSet K) const
{ return (support(idx) & ~K) == 0; }

NodeSet RootSystem::support(int idx) const
{
  NodeSet s = 0;
  for (int i = 0; i < _rank; ++i)
    if (coeff(idx, i) != 0)
      s |= node_bit(i);
  return s;
}

int RootSystem::highest_root_of(NodeSet K, bool short_root) const
{
  int best = -1;
  for (int a = 0; a < _npos; ++a) {
    if (!in_span(a, K))
      continue;
    if (short_root && is_long(a))
      continue;
    best = a;
  }
  return best;
}

std::vector<NodeSet> RootSystem::components(NodeSet K) const
{
  std::vector<NodeSet> res;
  NodeSet left = K;
  while (left) {
    int start = node_list(left)[0];
    NodeSet comp = node_bit(start), frontier = comp;
    while (frontier) {
      NodeSet next = 0;
      for (int i : node_list(frontier))
        for (int j : node_list(left))
          if (!has_node(comp, j) && form(i, j) != 0)
            next |= node_bit(j);
      comp |= next;
      frontier = next;
    }
    res.push_back(comp);
    left &= ~comp;
  }
  return res;
}

NodeSet RootSystem::polar_nodes(NodeSet K) const
{
  int phi = highest_root_of(K);
  NodeSet res = 0;
  for (int i : node_list(K))
    if (inner(simple(i), phi) != 0)
      res |= node_bit(i);
  return res;
}

NodeSet RootSystem::dual_polar_nodes(NodeSet K) const
{
  int phi = highest_root_of(K, true);
  if (phi < 0)
    phi = highest_root_of(K);
  NodeSet res = 0;
  for (int i : node_list(K))
    if (inner(simple(i), phi) != 0)
      res |= node_bit(i);
  return res;
}

PolarData RootSystem::polar_data() const
{
  PolarData pd;
  NodeSet S = all_nodes(_rank);
  pd.polar = polar_nodes(S);
  pd.dual_polar = dual_polar_nodes(S);
  pd.has_dual_polar = true;

  auto comps = components(S & ~pd.polar);
  if (comps.size() == 1) {
    pd.copolar = polar_nodes(comps[0]);
    pd.has_copolar = true;
  }
  return pd;
}

bool RootSystem::dominates(int b, int a) const
{
  for (int i = 0; i < _rank; ++i)
    if (coeff(b, i) < coeff(a, i))
      return false;
  return true;
}

std::vector<int> RootSystem::closure_up(std::vector<int> const &A) const
{
  std::vector<int> res;
  for (int b = 0; b < _npos; ++b)
    for (int a : A)
      if (dominates(b, a)) {
        res.push_back(b);
        break;
      }
  return res;
}

std::string RootSystem::str(int idx) const
{
  std::string s = positive(idx) ? "" : "-";
  Root const &r = _roots[positive(idx) ? idx : neg(idx)];
  for (int c : r)
    s += char('0' + c);
  return s;
}

int RootSystem::parse(std::string const &digits) const
{
  std::size_t p = 0;
  bool negate = false;
  if (p < digits.size() && digits[p] == '-') {
    negate = true;
    ++p;
  }
  Root r;
  for (; p < digits.size(); ++p) {
    char ch = digits[p];
    if (ch == ' ')
      continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw NotARoot("'" + digits + "' is not a digit string");
    r.push_back(ch - '0');
  }
  if (negate)
    for (auto &c : r)
      c = -c;
  if (int(r.size()) != _rank)
    throw NotARoot("'" + digits + "' has wrong length for " + _type.name());
  return index_or_throw(r);
}

std::vector<Root> RootSystem::positive_roots() const
{ return {_roots.begin(), _roots.begin() + _npos}; }

std::vector<Root> read_root_table(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);

  std::vector<Root> res;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    Root r;
    int c;
    while (ss >> c)
      r.push_back(c);
    if (!r.empty())
      res.push_back(r);
  }
  return res;
}

} // namespace chev
