#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "chev/errors.h"
#include "chev/weyl.h"

namespace chev
{

Weyl::Weyl(RootSystem const &rs) : _rs(rs)
{
  for (int i = 0; i < rs.rank(); ++i)
    _simple_refl.push_back(reflection(rs.simple(i)));

  _w0 = longest(all_nodes(rs.rank()));

  for (int i = 0; i < rs.rank(); ++i) {
    int img = _rs.neg(_w0(rs.simple(i)));
    _pi0.push_back(rs.simple_node(img));
  }
}

WeylElement Weyl::identity() const
{
  WeylElement w;
  w.perm.resize(_rs.num_roots());
  for (int a = 0; a < _rs.num_roots(); ++a)
    w.perm[a] = std::uint8_t(a);
  return w;
}

WeylElement Weyl::reflection(int alpha) const
{
  if (alpha < 0 || alpha >= _rs.num_roots())
    throw NotARoot("root index out of range");

  int n = _rs.rank();
  WeylElement w;
  w.perm.resize(_rs.num_roots());
  for (int b = 0; b < _rs.num_roots(); ++b) {
    int c = _rs.coroot_pairing(b, alpha);
    Root r(n);
    for (int i = 0; i < n; ++i)
      r[i] = _rs.coeff(b, i) - c * _rs.coeff(alpha, i);
    w.perm[b] = std::uint8_t(_rs.index(r));
  }
  return w;
}

WeylElement Weyl::mul(WeylElement const &a, WeylElement const &b) const
{
  WeylElement w;
  w.perm.resize(a.perm.size());
  for (std::size_t r = 0; r < a.perm.size(); ++r)
    w.perm[r] = a.perm[b.perm[r]];
  return w;
}

WeylElement Weyl::mul_s(WeylElement const &w, int i) const
{ return mul(w, _simple_refl[i]); }

WeylElement Weyl::s_mul(int i, WeylElement const &w) const
{ return mul(_simple_refl[i], w); }

WeylElement Weyl::inverse(WeylElement const &w) const
{
  WeylElement v;
  v.perm.resize(w.perm.size());
  for (std::size_t r = 0; r < w.perm.size(); ++r)
    v.perm[w.perm[r]] = std::uint8_t(r);
  return v;
}

int Weyl::length(WeylElement const &w) const
{
  int l = 0;
  for (int a = 0; a < _rs.num_pos(); ++a)
    if (!_rs.positive(w(a)))
      ++l;
  return l;
}

std::vector<int> Weyl::inversion_set(WeylElement const &w) const
{
  auto wi = inverse(w);
  std::vector<int> res;
  for (int a = 0; a < _rs.num_pos(); ++a)
    if (!_rs.positive(wi(a)))
      res.push_back(a);
  return res;
}

bool Weyl::left_descent(WeylElement const &w, int i) const
{
  // w^{-1} alpha_i < 0 iff alpha_i = w(beta) for a negative beta
  int a = _rs.simple(i);
  for (int b = _rs.num_pos(); b < _rs.num_roots(); ++b)
    if (w(b) == a)
      return true;
  return false;
}

std::vector<int> Weyl::reduced_word(WeylElement const &w) const
{
  std::vector<int> word;
  WeylElement cur = w;
  for (;;) {
    int found = -1;
    for (int i = 0; i < rank(); ++i)
      if (left_descent(cur, i)) {
        found = i;
        break;
      }
    if (found < 0)
      break;
    word.push_back(found);
    cur = s_mul(found, cur);
  }
  return word;
}

WeylElement Weyl::from_word(std::vector<int> const &word) const
{
  WeylElement w = identity();
  for (int i : word)
    w = mul_s(w, i);
  return w;
}

WeylElement Weyl::longest(NodeSet J) const
{
  WeylElement w = identity();
  for (bool grew = true; grew;) {
    grew = false;
    for (int j : node_list(J))
      if (!right_descent(w, j)) {
        w = mul_s(w, j);
        grew = true;
      }
  }
  return w;
}

NodeSet Weyl::pi0(NodeSet J) const
{
  NodeSet res = 0;
  for (int j : node_list(J))
    res |= node_bit(_pi0[j]);
  return res;
}

bool Weyl::in_parabolic(WeylElement const &w, NodeSet J) const
{
  for (int a : inversion_set(w))
    if (!_rs.in_span(a, J))
      return false;
  return true;
}

WeylElement Weyl::double_coset_rep(WeylElement w, NodeSet J, NodeSet K) const
{
  for (bool moved = true; moved;) {
    moved = false;
    for (int j : node_list(J))
      if (left_descent(w, j)) {
        w = s_mul(j, w);
        moved = true;
      }
    for (int k : node_list(K))
      if (right_descent(w, k)) {
        w = mul_s(w, k);
        moved = true;
      }
  }
  return w;
}

bool Weyl::same_double_coset(WeylElement const &a, WeylElement const &b,
                             NodeSet J, NodeSet K) const
{ return double_coset_rep(a, J, K) == double_coset_rep(b, J, K); }

std::vector<WeylElement> Weyl::min_coset_reps(NodeSet K,
                                              std::size_t budget) const
{
  std::vector<WeylElement> res{identity()};
  std::unordered_set<std::uint64_t, WeylKeyHash> seen{key(res[0])};

  for (std::size_t k = 0; k < res.size(); ++k) {
    for (int i = 0; i < rank(); ++i) {
      if (left_descent(res[k], i))
        continue;
      WeylElement y = s_mul(i, res[k]);
      bool minimal = true;
      for (int j : node_list(K))
        if (right_descent(y, j)) {
          minimal = false;
          break;
        }
      if (!minimal || !seen.insert(key(y)).second)
        continue;
      res.push_back(y);
      if (res.size() > budget)
        throw PlanTooLarge("coset enumeration exceeds budget");
    }
  }
  return res;
}

std::vector<WeylElement> Weyl::min_double_coset_reps(NodeSet J,
                                                     NodeSet K) const
{
  std::vector<WeylElement> res;
  for (auto const &w : min_coset_reps(K)) {
    bool minimal = true;
    for (int j : node_list(J))
      if (left_descent(w, j)) {
        minimal = false;
        break;
      }
    if (minimal)
      res.push_back(w);
  }
  std::stable_sort(res.begin(), res.end(),
                   [&](WeylElement const &a, WeylElement const &b) {
                     return length(a) < length(b);
                   });
  return res;
}

std::vector<int> Weyl::orbit(NodeSet J, int alpha) const
{
  std::vector<int> res{alpha};
  std::vector<char> seen(_rs.num_roots(), 0);
  seen[alpha] = 1;
  for (std::size_t k = 0; k < res.size(); ++k)
    for (int j : node_list(J)) {
      int b = _simple_refl[j](res[k]);
      if (!seen[b]) {
        seen[b] = 1;
        res.push_back(b);
      }
    }
  std::sort(res.begin(), res.end());
  return res;
}

int Weyl::min_occurrences(WeylElement const &w, int i) const
{
  std::unordered_map<std::uint64_t, int, WeylKeyHash> memo;

  std::function<int(WeylElement const &)> f = [&](WeylElement const &x) {
    auto k = key(x);
    auto it = memo.find(k);
    if (it != memo.end())
      return it->second;
    int best = -1;
    for (int j = 0; j < rank(); ++j) {
      if (!right_descent(x, j))
        continue;
      int v = f(mul_s(x, j)) + (j == i ? 1 : 0);
      if (best < 0 || v < best)
        best = v;
    }
    if (best < 0)
      best = 0;
    memo[k] = best;
    if (memo.size() > 4000000)
      throw PlanTooLarge("reduced word search exceeds budget");
    return best;
  };

  return f(w);
}

WeylElement Weyl::demazure(WeylElement const &x, WeylElement const &y) const
{
  WeylElement z = x;
  for (int i : reduced_word(y))
    if (!right_descent(z, i))
      z = mul_s(z, i);
  return z;
}

std::uint64_t Weyl::key(WeylElement const &w) const
{
  std::uint64_t k = 0;
  for (int i = 0; i < rank(); ++i)
    k |= std::uint64_t(w(_rs.simple(i))) << (8 * i);
  return k;
}

WeylElement Weyl::from_key(std::uint64_t k) const
{
  // rebuild by walking the images of simple roots down to the identity
  std::vector<int> img(rank());
  for (int i = 0; i < rank(); ++i)
    img[i] = int((k >> (8 * i)) & 0xff);

  // w(alpha_i) negative for some i means w has right descent s_i
  std::vector<int> word;
  for (;;) {
    int found = -1;
    for (int i = 0; i < rank(); ++i)
      if (!_rs.positive(img[i])) {
        found = i;
        break;
      }
    if (found < 0)
      break;
    word.push_back(found);
    // images under w s_i: w(s_i alpha_j) = w(alpha_j) - c w(alpha_i)
    std::vector<int> next(rank());
    for (int j = 0; j < rank(); ++j) {
      int c = _rs.cartan(j, found);
      Root r(rank());
      for (int t = 0; t < rank(); ++t)
        r[t] = _rs.coeff(img[j], t) - c * _rs.coeff(img[found], t);
      next[j] = _rs.index(r);
    }
    img = next;
  }
  std::reverse(word.begin(), word.end());
  return from_word(word);
}

std::string Weyl::word_str(WeylElement const &w) const
{
  auto word = reduced_word(w);
  if (word.empty())
    return "e";
  std::string s;
  for (int i : word)
    s += "s" + std::to_string(i + 1);
  return s;
}

} // namespace chev
