#ifndef GUARD_CHEV_GROUPNF_H
#define GUARD_CHEV_GROUPNF_H

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adjoint.h"
#include "chevalley.h"
#include "errors.h"
#include "field.h"
#include "weyl.h"

namespace chev
{

enum class TokenKind { X, N, NR, H, W0, WJ };

// One generator of a group word.
//   X   x_root(scalar), root of either sign
//   N   n_node = x_i(1) x_{-i}(-1) x_i(1)
//   NR  s_root(scalar) = x_r(c) x_{-r}(-1/c) x_r(c)
//   H   prod h_{omega_i}(c_i) over the (node, c) pairs in torus
//   W0  canonical lift of w_0
//   WJ  canonical lift of the longest element of W_nodes
template<typename F>
struct Token
{
  TokenKind kind = TokenKind::X;
  int root = -1;
  int node = -1;
  F scalar{};
  NodeSet nodes = 0;
  std::vector<std::pair<int, F>> torus;

  static Token x(int root, F a)
  {
    Token t;
    t.kind = TokenKind::X;
    t.root = root;
    t.scalar = a;
    return t;
  }

  static Token n(int node)
  {
    Token t;
    t.kind = TokenKind::N;
    t.node = node;
    return t;
  }

  static Token nr(int root, F c)
  {
    if (c.is_zero())
      throw ZeroScalar("s_alpha(c) needs c != 0");
    Token t;
    t.kind = TokenKind::NR;
    t.root = root;
    t.scalar = c;
    return t;
  }

  static Token h(std::vector<std::pair<int, F>> torus)
  {
    for (auto const &p : torus)
      if (p.second.is_zero())
        throw ZeroScalar("torus scalar must be nonzero");
    Token t;
    t.kind = TokenKind::H;
    t.torus = std::move(torus);
    return t;
  }

  static Token w0()
  {
    Token t;
    t.kind = TokenKind::W0;
    return t;
  }

  static Token wj(NodeSet J)
  {
    Token t;
    t.kind = TokenKind::WJ;
    t.nodes = J;
    return t;
  }

  bool operator==(Token const &) const = default;
};

template<typename F>
using Word = std::vector<Token<F>>;

// g = u * w * h * u' with u supported on Phi(w), w lifted canonically and h
// recorded by its values on the simple roots.
template<typename F>
struct NormalForm
{
  std::vector<F> u;
  WeylElement w;
  std::vector<signed char> sigma;
  std::vector<F> chi;
  std::vector<F> up;

  bool operator==(NormalForm const &o) const
  { return u == o.u && w == o.w && chi == o.chi && up == o.up; }
};

template<typename F>
class Engine
{
public:
  using Tok = Token<F>;
  using W = Word<F>;
  using NF = NormalForm<F>;

  explicit Engine(Context const &ctx)
    : _ctx(ctx), _rs(ctx.rs), _W(ctx.weyl), _c(ctx.chev), _N(ctx.rs.num_pos())
  {
    int R = _rs.num_roots();
    _eta.resize(std::size_t(_rs.rank()) * R);
    for (int i = 0; i < _rs.rank(); ++i)
      for (int b = 0; b < R; ++b)
        _eta[i * R + b] = F::from_int(_c.eta(i, b));

    _chain_nodes.resize(_N);
    _chain_simple.resize(_N);
    _chain_sign.resize(_N);
    for (int a = 0; a < _N; ++a) {
      int cur = a;
      while (_rs.simple_node(cur) < 0) {
        int j = 0;
        while (_rs.coroot_pairing(cur, _rs.simple(j)) <= 0)
          ++j;
        _chain_nodes[a].push_back(j);
        cur = _W.s(j)(cur);
      }
      int i = _rs.simple_node(cur);
      _chain_simple[a] = i;
      int g = _rs.neg(_rs.simple(i));
      int sgn = 1;
      auto const &nodes = _chain_nodes[a];
      for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        sgn *= _c.eta(*it, g);
        g = _W.s(*it)(g);
      }
      if (g != _rs.neg(a))
        throw InternalError("reflection chain does not reach the root");
      _chain_sign[a] = sgn;
    }
    _w0_word = _W.reduced_word(_W.w0());
  }

  Context const &context() const
  { return _ctx; }

  NF identity() const
  {
    NF g;
    g.u.assign(_N, F());
    g.w = _W.identity();
    g.sigma.assign(_rs.num_roots(), 1);
    g.chi.assign(_rs.rank(), F::from_int(1));
    g.up.assign(_N, F());
    return g;
  }

  NF normalize(W const &word) const
  {
    NF g = identity();
    for (auto const &t : word)
      mul(g, t);
    return g;
  }

  WeylElement cell(W const &word) const
  { return normalize(word).w; }

  void mul(NF &g, Tok const &t) const
  {
    switch (t.kind) {
      case TokenKind::X:
        mul_x(g, t.root, t.scalar);
        break;
      case TokenKind::N:
        mul_n(g, t.node);
        break;
      case TokenKind::NR: {
        F inv = F::from_int(1) / t.scalar;
        mul_x(g, t.root, t.scalar);
        mul_x(g, _rs.neg(t.root), -inv);
        mul_x(g, t.root, t.scalar);
        break;
      }
      case TokenKind::H:
        mul_h(g, torus_chi(t.torus));
        break;
      case TokenKind::W0:
        for (int i : _w0_word)
          mul_n(g, i);
        break;
      case TokenKind::WJ:
        for (int i : _W.reduced_word(_W.longest(t.nodes)))
          mul_n(g, i);
        break;
    }
  }

  void mul_x(NF &g, int alpha, F const &a) const
  {
    if (a.is_zero())
      return;
    if (_rs.positive(alpha)) {
      rightmul(g.up, alpha, a);
      return;
    }
    int pos = _rs.neg(alpha);
    F b = _chain_sign[pos] > 0 ? a : -a;
    auto const &nodes = _chain_nodes[pos];
    for (int j : nodes)
      mul_n(g, j);

    // x_{-a_i}(b) = x_{a_i}(1/b) n_i x_{a_i}(b) h_{a_i^vee}(-b)
    int i = _chain_simple[pos];
    int ai = _rs.simple(i);
    rightmul(g.up, ai, F::from_int(1) / b);
    mul_n(g, i);
    rightmul(g.up, ai, b);
    mul_h(g, coroot_chi(_rs, ai, -b));

    // n_j^{-1} = n_j h_{a_j^vee}(-1)
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
      mul_n(g, *it);
      mul_h(g, coroot_chi(_rs, _rs.simple(*it), F::from_int(-1)));
    }
  }

  void mul_h(NF &g, std::vector<F> const &chi_t) const
  {
    for (int b = 0; b < _N; ++b)
      if (!g.up[b].is_zero())
        g.up[b] = g.up[b] / root_value(chi_t, b);
    for (int j = 0; j < _rs.rank(); ++j)
      g.chi[j] *= chi_t[j];
  }

  void mul_n(NF &g, int i) const
  {
    int ai = _rs.simple(i);
    int R = _rs.num_roots();
    WeylElement const &si = _W.s(i);

    F t = g.up[ai];
    std::vector<F> u2 = t.is_zero() ? g.up : leftmul(ai, -t, g.up);

    // n_i^{-1} x_g(c) n_i = x_{s_i g}(eta_i(s_i g) c)
    std::vector<F> u3(_N);
    for (int gm = 0; gm < _N; ++gm)
      if (!u2[gm].is_zero()) {
        int sg = si(gm);
        rightmul(u3, sg, _eta[i * R + sg] * u2[gm]);
      }

    F tp = g.chi[i] * t;
    std::vector<F> chi_s(_rs.rank());
    for (int j = 0; j < _rs.rank(); ++j)
      chi_s[j] = g.chi[j] * field_pow(g.chi[i], -_rs.cartan(j, i));

    int b = g.w(ai);
    if (_rs.positive(b)) {
      rightmul(g.u, b, signed_scalar(g.sigma[ai], tp));
      g.sigma = sigma_ascent(g.sigma, i);
      g.w = _W.mul_s(g.w, i);
      g.chi = chi_s;
      g.up = std::move(u3);
      return;
    }

    std::vector<signed char> sigma_p = sigma_descent(g.sigma, i);
    WeylElement wp = _W.mul_s(g.w, i);
    int beta = wp(ai);

    if (tp.is_zero()) {
      F s = g.u[beta];
      rightmul(g.u, beta, -s);
      std::vector<F> H = chi_s;
      for (int j = 0; j < _rs.rank(); ++j)
        if (_rs.cartan(j, i) % 2)
          H[j] = -H[j];
      g.w = wp;
      g.sigma = std::move(sigma_p);
      g.up = leftmul(ai, signed_scalar(g.sigma[ai], s) / H[i], u3);
      g.chi = std::move(H);
      return;
    }

    rightmul(g.u, beta, -(signed_scalar(sigma_p[ai], F::from_int(1)) / tp));
    F lead = -(F::from_int(1) / (tp * chi_s[i]));
    std::vector<F> H = chi_s;
    for (int j = 0; j < _rs.rank(); ++j)
      H[j] *= field_pow(-tp, _rs.cartan(j, i));
    g.chi = std::move(H);
    g.up = leftmul(ai, lead, u3);
  }

  // P <- P * x_alpha(a) for P in canonical order, alpha positive
  void rightmul(std::vector<F> &P, int alpha, F const &a) const
  {
    std::vector<std::pair<int, F>> stack{{alpha, a}};
    std::vector<std::pair<int, F>> items;
    while (!stack.empty()) {
      auto [r, s] = stack.back();
      stack.pop_back();
      if (s.is_zero())
        continue;
      items.clear();
      F ms = -s;
      for (int b = r + 1; b < _N; ++b) {
        if (P[b].is_zero())
          continue;
        F cb = P[b];
        P[b] = F();
        items.emplace_back(b, cb);
        for (auto const &term : _c.conj_terms(r, b))
          items.emplace_back(term.root, F::from_int(term.coeff) *
                                            small_pow(ms, term.i) *
                                            small_pow(cb, term.j));
      }
      P[r] += s;
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        stack.push_back(*it);
    }
  }

  // x_alpha(a) * P
  std::vector<F> leftmul(int alpha, F const &a, std::vector<F> const &P) const
  {
    std::vector<F> Q(_N);
    rightmul(Q, alpha, a);
    for (int b = 0; b < _N; ++b)
      if (!P[b].is_zero())
        rightmul(Q, b, P[b]);
    return Q;
  }

  // x_beta(-c) P x_beta(c)
  std::vector<F> conjugate(std::vector<F> const &P, int beta, F const &c) const
  {
    if (c.is_zero())
      return P;
    std::vector<F> Q = leftmul(beta, -c, P);
    rightmul(Q, beta, c);
    return Q;
  }

  // values on simple roots of prod h_{omega_i}(c_i)
  std::vector<F> torus_chi(std::vector<std::pair<int, F>> const &torus) const
  {
    std::vector<F> chi(_rs.rank(), F::from_int(1));
    for (auto const &[node, c] : torus) {
      if (node < 0 || node >= _rs.rank())
        throw DimensionMismatch("torus node out of range");
      chi[node] *= c;
    }
    return chi;
  }

  // chi(beta) for a root beta
  F root_value(std::vector<F> const &chi, int beta) const
  {
    bool pos = _rs.positive(beta);
    int b = pos ? beta : _rs.neg(beta);
    F v = F::from_int(1);
    for (int j = 0; j < _rs.rank(); ++j) {
      int k = _rs.coeff(b, j);
      if (k)
        v *= small_pow(chi[j], k);
    }
    return pos ? v : F::from_int(1) / v;
  }

  W to_word(NF const &g) const
  {
    W word;
    for (int b = 0; b < _N; ++b)
      if (!g.u[b].is_zero())
        word.push_back(Tok::x(b, g.u[b]));
    for (int i : _W.reduced_word(g.w))
      word.push_back(Tok::n(i));
    std::vector<std::pair<int, F>> torus;
    for (int j = 0; j < _rs.rank(); ++j)
      if (!g.chi[j].is_one())
        torus.emplace_back(j, g.chi[j]);
    if (!torus.empty())
      word.push_back(Tok::h(torus));
    for (int b = 0; b < _N; ++b)
      if (!g.up[b].is_zero())
        word.push_back(Tok::x(b, g.up[b]));
    return word;
  }

  W inverse(W const &word) const
  {
    W res;
    F m1 = F::from_int(-1);
    auto inv_lift = [&](std::vector<int> const &rw) {
      for (auto it = rw.rbegin(); it != rw.rend(); ++it)
        res.push_back(Tok::nr(_rs.simple(*it), m1));
    };
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      Tok const &t = *it;
      switch (t.kind) {
        case TokenKind::X:
          res.push_back(Tok::x(t.root, -t.scalar));
          break;
        case TokenKind::N:
          res.push_back(Tok::nr(_rs.simple(t.node), m1));
          break;
        case TokenKind::NR:
          res.push_back(Tok::nr(t.root, -t.scalar));
          break;
        case TokenKind::H: {
          auto torus = t.torus;
          for (auto &p : torus)
            p.second = F::from_int(1) / p.second;
          res.push_back(Tok::h(torus));
          break;
        }
        case TokenKind::W0:
          inv_lift(_w0_word);
          break;
        case TokenKind::WJ:
          inv_lift(_W.reduced_word(_W.longest(t.nodes)));
          break;
      }
    }
    return res;
  }

  // delta(gB, hB) = cell(g^{-1} h)
  WeylElement distance(NF const &c, NF const &d) const
  {
    W word = inverse(to_word(c));
    W wd = to_word(d);
    word.insert(word.end(), wd.begin(), wd.end());
    return cell(word);
  }

  // lift of w as a word of N tokens along the lexicographically least
  // reduced word
  W lift(WeylElement const &w) const
  {
    W word;
    for (int i : _W.reduced_word(w))
      word.push_back(Tok::n(i));
    return word;
  }

  // sign with lift(w) x_b(t) lift(w)^{-1} = x_{w b}(sign * t)
  int lift_sign(WeylElement const &w, int b) const
  {
    NF g = identity();
    for (int i : _W.reduced_word(w)) {
      g.sigma = sigma_ascent(g.sigma, i);
      g.w = _W.mul_s(g.w, i);
    }
    return g.sigma[b];
  }

  std::vector<signed char> lift_signs(WeylElement const &w) const
  {
    std::vector<signed char> sigma(_rs.num_roots(), 1);
    for (int i : _W.reduced_word(w))
      sigma = sigma_ascent(sigma, i);
    return sigma;
  }

  // adjoint action of a word on a vector
  void apply(W const &word, std::vector<F> &v) const
  {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      apply_token(*it, v);
  }

  void apply_token(Tok const &t, std::vector<F> &v) const
  {
    switch (t.kind) {
      case TokenKind::X:
        apply_x(_c, t.root, t.scalar, v);
        break;
      case TokenKind::N:
        apply_n(_c, t.node, v);
        break;
      case TokenKind::NR: {
        F inv = F::from_int(1) / t.scalar;
        apply_x(_c, t.root, t.scalar, v);
        apply_x(_c, _rs.neg(t.root), -inv, v);
        apply_x(_c, t.root, t.scalar, v);
        break;
      }
      case TokenKind::H:
        apply_h(_c, torus_chi(t.torus), v);
        break;
      case TokenKind::W0:
        for (auto it = _w0_word.rbegin(); it != _w0_word.rend(); ++it)
          apply_n(_c, *it, v);
        break;
      case TokenKind::WJ: {
        auto rw = _W.reduced_word(_W.longest(t.nodes));
        for (auto it = rw.rbegin(); it != rw.rend(); ++it)
          apply_n(_c, *it, v);
        break;
      }
    }
  }

  Matrix<F> matrix(W const &word) const
  {
    Matrix<F> m(_c.dim());
    for (int b = 0; b < _c.dim(); ++b) {
      std::vector<F> v(_c.dim());
      v[b] = F::from_int(1);
      apply(word, v);
      m.set_column(b, v);
    }
    return m;
  }

  // Vectors on which agreement of two group elements implies equality: the
  // whole basis for small algebras, else e_{+-alpha_i}, which generate the
  // algebra over any field when the type is simply laced.
  std::vector<int> probe_basis() const
  {
    std::vector<int> res;
    if (_c.dim() <= 80 || !_rs.simply_laced()) {
      for (int b = 0; b < _c.dim(); ++b)
        res.push_back(b);
      return res;
    }
    for (int i = 0; i < _rs.rank(); ++i) {
      res.push_back(_c.basis_of_root(_rs.simple(i)));
      res.push_back(_c.basis_of_root(_rs.neg(_rs.simple(i))));
    }
    return res;
  }

  bool same_element(W const &a, W const &b) const
  {
    for (int p : probe_basis()) {
      std::vector<F> va(_c.dim()), vb(_c.dim());
      va[p] = vb[p] = F::from_int(1);
      apply(a, va);
      apply(b, vb);
      if (!(va == vb))
        return false;
    }
    return true;
  }

  bool check(W const &word) const
  { return same_element(word, to_word(normalize(word))); }

  bool support_ok(NF const &g) const
  {
    auto inv = _W.inversion_set(g.w);
    std::vector<char> in(_N, 0);
    for (int a : inv)
      in[a] = 1;
    for (int b = 0; b < _N; ++b)
      if (!g.u[b].is_zero() && !in[b])
        return false;
    return true;
  }

private:
  Context const &_ctx;
  RootSystem const &_rs;
  Weyl const &_W;
  Chevalley const &_c;
  int _N;
  std::vector<F> _eta;
  std::vector<std::vector<int>> _chain_nodes;
  std::vector<int> _chain_simple;
  std::vector<int> _chain_sign;
  std::vector<int> _w0_word;

  static F small_pow(F const &x, int e)
  {
    F r = x;
    for (int k = 1; k < e; ++k)
      r *= x;
    return e == 0 ? F::from_int(1) : r;
  }

  static F signed_scalar(int s, F const &x)
  { return s > 0 ? x : -x; }

  // sigma for w s_i from sigma for w when l(w s_i) > l(w)
  std::vector<signed char> sigma_ascent(std::vector<signed char> const &sg,
                                        int i) const
  {
    WeylElement const &si = _W.s(i);
    std::vector<signed char> res(sg.size());
    for (int b = 0; b < int(sg.size()); ++b)
      res[b] = sg[si(b)] * _c.eta(i, b);
    return res;
  }

  // sigma for w s_i from sigma for w when l(w s_i) < l(w)
  std::vector<signed char> sigma_descent(std::vector<signed char> const &sg,
                                         int i) const
  {
    WeylElement const &si = _W.s(i);
    std::vector<signed char> res(sg.size());
    for (int g = 0; g < int(sg.size()); ++g)
      res[g] = sg[si(g)] * _c.eta(i, si(g));
    return res;
  }
};

// True when simplices of types J and K in chambers at distance delta are
// opposite.
inline bool simplices_opposite(Weyl const &W, WeylElement const &delta,
                               NodeSet J, NodeSet K)
{
  NodeSet S = all_nodes(W.rank());
  if (J == 0 || K != W.pi0(J))
    return false;
  return W.double_coset_rep(delta, S & ~J, S & ~K) ==
         W.double_coset_rep(W.w0(), S & ~J, S & ~K);
}

// Map from adjoint matrix to Bruhat cell over a finite field, built by
// enumerating every product u w h u'.
template<typename F>
class CellOracle
{
public:
  CellOracle(Context const &ctx, std::size_t budget = 10000000)
    : _ctx(ctx)
  {
    static_assert(F::finite, "oracle needs a finite field");
    RootSystem const &rs = ctx.rs;
    Weyl const &W = ctx.weyl;
    Chevalley const &c = ctx.chev;
    int N = rs.num_pos();
    int q = int(F::order);

    auto elements = W.min_coset_reps(0);
    double size = 0;
    for (auto const &w : elements)
      size += std::pow(double(q), W.length(w));
    double tor = std::pow(double(q - 1), rs.rank());
    size *= std::pow(double(q), N) * tor;
    if (size > double(budget))
      throw OracleTooLarge("group too large for exhaustive enumeration");

    std::vector<F> units;
    for (int k = 1; k < q; ++k)
      units.push_back(F::element(unsigned(k)));

    // all elements of U+ as matrices, and all torus elements
    std::vector<Matrix<F>> Umats = unipotents(c, allpos(N), q);
    std::vector<Matrix<F>> Hmats;
    std::vector<int> idx(rs.rank(), 0);
    for (;;) {
      std::vector<F> chi(rs.rank());
      for (int j = 0; j < rs.rank(); ++j)
        chi[j] = units[idx[j]];
      Hmats.push_back(gen_h(c, chi));
      int j = 0;
      while (j < rs.rank() && ++idx[j] == int(units.size()))
        idx[j++] = 0;
      if (j == rs.rank())
        break;
    }

    for (auto const &w : elements) {
      Matrix<F> wm = Matrix<F>::identity(c.dim());
      for (int i : W.reduced_word(w))
        wm = wm * gen_n(c, rs.simple(i), F::from_int(1));
      std::uint64_t key = W.key(w);
      for (auto const &um : unipotents(c, W.inversion_set(w), q)) {
        Matrix<F> uw = um * wm;
        for (auto const &hm : Hmats) {
          Matrix<F> uwh = uw * hm;
          for (auto const &upm : Umats)
            if (!_table.emplace((uwh * upm).key(), key).second)
              throw InternalError("Bruhat decomposition is not unique");
        }
      }
    }
  }

  std::size_t size() const
  { return _table.size(); }

  // cell of the element with this matrix
  WeylElement cell(Matrix<F> const &m) const
  {
    auto it = _table.find(m.key());
    if (it == _table.end())
      throw InternalError("matrix is not in the group");
    return _ctx.weyl.from_key(it->second);
  }

private:
  Context const &_ctx;
  std::unordered_map<std::string, std::uint64_t> _table;

  static std::vector<int> allpos(int N)
  {
    std::vector<int> r(N);
    for (int k = 0; k < N; ++k)
      r[k] = k;
    return r;
  }

  static std::vector<Matrix<F>> unipotents(Chevalley const &c,
                                           std::vector<int> const &roots,
                                           int q)
  {
    std::vector<Matrix<F>> res{Matrix<F>::identity(c.dim())};
    for (int b : roots) {
      std::vector<Matrix<F>> next;
      for (int k = 0; k < q; ++k) {
        Matrix<F> xm = gen_x(c, b, F::element(unsigned(k)));
        for (auto const &m : res)
          next.push_back(m * xm);
      }
      res.swap(next);
    }
    return res;
  }
};

template<typename F>
F random_scalar(std::mt19937_64 &rng, bool nonzero)
{
  if constexpr (F::finite) {
    unsigned lo = nonzero ? 1 : 0;
    return F::element(lo + unsigned(rng() % (F::order - lo)));
  } else {
    for (;;) {
      long num = long(rng() % 11) - 5;
      long den = long(rng() % 3) + 1;
      if (nonzero && num == 0)
        continue;
      return F::from_int(num) / F::from_int(den);
    }
  }
}

// Random word of X, N, NR and H tokens.
template<typename F>
Word<F> random_word(RootSystem const &rs, std::mt19937_64 &rng, int length)
{
  Word<F> word;
  for (int k = 0; k < length; ++k) {
    int kind = int(rng() % 10);
    if (kind < 6) {
      int r = int(rng() % rs.num_roots());
      word.push_back(Token<F>::x(r, random_scalar<F>(rng, false)));
    } else if (kind < 8) {
      word.push_back(Token<F>::n(int(rng() % rs.rank())));
    } else if (kind < 9) {
      int r = int(rng() % rs.num_roots());
      word.push_back(Token<F>::nr(r, random_scalar<F>(rng, true)));
    } else {
      int j = int(rng() % rs.rank());
      word.push_back(Token<F>::h({{j, random_scalar<F>(rng, true)}}));
    }
  }
  return word;
}

} // namespace chev

#endif // GUARD_CHEV_GROUPNF_H
