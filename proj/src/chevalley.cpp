#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "chev/chevalley.h"
#include "chev/errors.h"

namespace chev
{

namespace
{

using Sparse = std::map<int, long>;

struct Frac
{
  long num = 0;
  long den = 1;

  Frac operator+(Frac o) const
  {
    Frac r{num * o.den + o.num * den, den * o.den};
    long g = std::gcd(r.num, r.den);
    if (g)
      r.num /= g, r.den /= g;
    return r;
  }
};

} // namespace

Chevalley::Chevalley(RootSystem const &rs) : _rs(rs)
{
  compute_structure_constants();

  std::string failure;
  if (!check_jacobi(&failure))
    throw InternalError("Jacobi identity fails: " + failure);

  compute_columns();
  compute_eta();
  compute_conj_terms();
}

void Chevalley::compute_structure_constants()
{
  int R = _rs.num_roots();
  int P = _rs.num_pos();
  _N.assign(R * R, 0);
  std::vector<char> known(R * R, 0);

  auto set_pos = [&](int a, int b, int v) {
    _N[a * R + b] = v;
    _N[b * R + a] = -v;
    known[a * R + b] = known[b * R + a] = 1;
  };

  auto pstring = [&](int a, int b) {
    // max k with b - k a a root
    int p = 0, cur = b;
    for (;;) {
      int nxt = _rs.add(cur, _rs.neg(a));
      if (nxt < 0)
        break;
      ++p;
      cur = nxt;
    }
    return p;
  };

  std::function<long(int, int)> val = [&](int x, int y) -> long {
    if (_rs.add(x, y) < 0)
      return 0;
    bool px = _rs.positive(x), py = _rs.positive(y);
    if (px && py) {
      if (!known[x * R + y])
        throw InternalError("structure constant requested out of order");
      return _N[x * R + y];
    }
    if (!px && !py)
      return -val(_rs.neg(x), _rs.neg(y));
    if (!px)
      return -val(y, x);
    int z = _rs.add(x, y);
    if (_rs.positive(z)) {
      long v = -long(_rs.norm(z)) * val(_rs.neg(y), z);
      if (v % _rs.norm(x))
        throw InternalError("non-integral structure constant");
      return v / _rs.norm(x);
    }
    long v = long(_rs.norm(z)) * val(_rs.neg(z), x);
    if (v % _rs.norm(y))
      throw InternalError("non-integral structure constant");
    return v / _rs.norm(y);
  };

  for (int xi = 0; xi < P; ++xi) {
    std::vector<std::pair<int, int>> special;
    for (int a = 0; a < P; ++a) {
      int b = _rs.add(xi, _rs.neg(a));
      if (b >= 0 && _rs.positive(b) && a < b)
        special.emplace_back(a, b);
    }
    if (special.empty())
      continue;

    auto [e, f] = special.front();
    long nef = pstring(e, f) + 1;
    set_pos(e, f, int(nef));

    for (std::size_t k = 1; k < special.size(); ++k) {
      auto [a, b] = special[k];
      Frac sum;
      int be = _rs.add(b, _rs.neg(e));
      if (be >= 0)
        sum = sum + Frac{val(b, _rs.neg(e)) * val(a, _rs.neg(f)),
                         long(_rs.norm(be))};
      int ae = _rs.add(a, _rs.neg(e));
      if (ae >= 0)
        sum = sum + Frac{val(_rs.neg(e), a) * val(b, _rs.neg(f)),
                         long(_rs.norm(ae))};
      long num = sum.num * _rs.norm(xi);
      long den = sum.den * nef;
      if (num % den)
        throw InternalError("non-integral structure constant");
      set_pos(a, b, int(num / den));
    }
  }

  for (int x = 0; x < R; ++x)
    for (int y = 0; y < R; ++y)
      if (_rs.add(x, y) >= 0)
        _N[x * R + y] = int(val(x, y));
}

std::vector<std::pair<int, long>> Chevalley::bracket(int ba, int bb) const
{
  int n = _rs.rank();
  std::vector<std::pair<int, long>> res;
  if (ba < n && bb < n)
    return res;
  if (ba < n) {
    auto r = bracket(bb, ba);
    for (auto &p : r)
      p.second = -p.second;
    return r;
  }
  int a = ba - n;
  if (bb < n) {
    // [e_a, h_j] = -<a, alpha_j^vee> e_a
    long c = _rs.coroot_pairing(a, _rs.simple(bb));
    if (c)
      res.emplace_back(ba, -c);
    return res;
  }
  int b = bb - n;
  if (b == _rs.neg(a)) {
    auto cc = _rs.coroot_coeffs(a);
    for (int j = 0; j < n; ++j)
      if (cc[j])
        res.emplace_back(j, cc[j]);
    return res;
  }
  int s = _rs.add(a, b);
  if (s >= 0)
    res.emplace_back(n + s, N(a, b));
  return res;
}

bool Chevalley::check_jacobi(std::string *failure) const
{
  int n = _rs.rank();
  int R = _rs.num_roots();

  auto br = [&](Sparse const &v, int bx) {
    Sparse out;
    for (auto [b, c] : v)
      for (auto [t, d] : bracket(bx, b))
        out[t] += c * d;
    return out;
  };

  // antisymmetry makes the Jacobiator alternating, so x < y < z suffices
  for (int x = 0; x < R; ++x)
    for (int y = x + 1; y < R; ++y) {
      auto xy = bracket(n + x, n + y), yx = bracket(n + y, n + x);
      std::sort(xy.begin(), xy.end());
      std::sort(yx.begin(), yx.end());
      for (auto &[t, c] : yx)
        c = -c;
      if (xy != yx) {
        if (failure)
          *failure = _rs.str(x) + "," + _rs.str(y) + " not antisymmetric";
        return false;
      }
    }

  for (int x = 0; x < R; ++x)
    for (int y = x + 1; y < R; ++y) {
      int xy = _rs.add(x, y);
      bool xny = x == _rs.neg(y);
      for (int z = y + 1; z < R; ++z) {
        // only triples whose weights sum to a root or zero can fail
        bool zero_sum = xy >= 0 && _rs.neg(xy) == z;
        int w = xy >= 0 ? _rs.add(xy, z) : -1;
        if (!zero_sum && w < 0) {
          int yz = _rs.add(y, z);
          int xz = _rs.add(x, z);
          bool any = (yz >= 0 && (_rs.add(x, yz) >= 0 || _rs.neg(yz) == x)) ||
                     (xz >= 0 && (_rs.add(y, xz) >= 0 || _rs.neg(xz) == y)) ||
                     xny || y == _rs.neg(z) || x == _rs.neg(z);
          if (!any)
            continue;
        }
        Sparse ex{{n + x, 1}}, ey{{n + y, 1}}, ez{{n + z, 1}};
        Sparse total;
        for (auto [t, c] : br(br(ez, n + y), n + x))
          total[t] += c;
        for (auto [t, c] : br(br(ex, n + z), n + y))
          total[t] += c;
        for (auto [t, c] : br(br(ey, n + x), n + z))
          total[t] += c;
        for (auto [t, c] : total)
          if (c != 0) {
            if (failure)
              *failure = _rs.str(x) + "," + _rs.str(y) + "," + _rs.str(z);
            return false;
          }
      }
    }
  return true;
}

void Chevalley::compute_columns()
{
  int D = dim();
  int R = _rs.num_roots();
  _xcol.assign(std::size_t(R) * D, {});

  for (int a = 0; a < R; ++a) {
    int ba = basis_of_root(a);
    for (int b = 0; b < D; ++b) {
      auto &col = _xcol[std::size_t(a) * D + b];
      col.push_back({b, 0, 1});
      Sparse cur{{b, 1}};
      long fact = 1;
      for (int k = 1; k <= 4; ++k) {
        Sparse next;
        for (auto [t, c] : cur)
          for (auto [u, d] : bracket(ba, t))
            next[u] += c * d;
        std::erase_if(next, [](auto const &p) { return p.second == 0; });
        if (next.empty())
          break;
        fact *= k;
        for (auto [t, c] : next) {
          if (c % fact)
            throw InternalError("divided power is not integral");
          col.push_back({t, k, c / fact});
        }
        cur = next;
      }
    }
  }
}

void Chevalley::compute_eta()
{
  int R = _rs.num_roots();
  int n = _rs.rank();
  int D = dim();
  _eta.assign(n * R, 0);

  auto apply = [&](int alpha, long t, std::vector<long> const &v) {
    std::vector<long> out(D, 0);
    for (int b = 0; b < D; ++b) {
      if (!v[b])
        continue;
      for (auto const &e : x_column(alpha, b)) {
        long tp = 1;
        for (int k = 0; k < e.power; ++k)
          tp *= t;
        out[e.to] += e.coeff * tp * v[b];
      }
    }
    return out;
  };

  for (int i = 0; i < n; ++i) {
    int ai = _rs.simple(i);
    int mi = _rs.neg(ai);
    WeylElement s = Weyl(_rs).s(i);
    for (int b = 0; b < R; ++b) {
      std::vector<long> v(D, 0);
      v[basis_of_root(b)] = 1;
      v = apply(ai, 1, v);
      v = apply(mi, -1, v);
      v = apply(ai, 1, v);
      int target = basis_of_root(s(b));
      for (int t = 0; t < D; ++t)
        if (t != target && v[t] != 0)
          throw InternalError("n_i does not permute root vectors");
      if (v[target] != 1 && v[target] != -1)
        throw InternalError("n_i sign is not a unit");
      _eta[i * R + b] = int(v[target]);
    }
  }
}

void Chevalley::compute_conj_terms()
{
  int R = _rs.num_roots();
  _conj.assign(std::size_t(R) * R, {});

  // M_{r,s,i} = N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s} / i!
  auto M = [&](int r, int s, int i) -> long {
    long prod = 1, fact = 1;
    int cur = s;
    for (int k = 0; k < i; ++k) {
      int nxt = _rs.add(r, cur);
      if (nxt < 0)
        return 0;
      prod *= N(r, cur);
      fact *= (k + 1);
      cur = nxt;
    }
    if (prod % fact)
      throw InternalError("non-integral commutator constant");
    return prod / fact;
  };

  int n = _rs.rank();
  auto combo = [&](int r, int s, int i, int j) {
    Root c(n);
    for (int t = 0; t < n; ++t)
      c[t] = i * _rs.coeff(r, t) + j * _rs.coeff(s, t);
    return _rs.index(c);
  };

  for (int r = 0; r < R; ++r)
    for (int s = 0; s < R; ++s) {
      if (s == r || s == _rs.neg(r))
        continue;
      auto &terms = _conj[std::size_t(r) * R + s];
      for (int tot = 2; tot <= 5; ++tot)
        for (int i = 1; i < tot; ++i) {
          int j = tot - i;
          int root = combo(r, s, i, j);
          if (root < 0)
            continue;
          long c;
          if (j == 1)
            c = M(r, s, i);
          else if (i == 1)
            c = (j % 2 ? -1 : 1) * M(s, r, j);
          else if (i == 3 && j == 2) {
            long m = M(_rs.add(r, s), r, 2);
            if (m % 3)
              throw InternalError("non-integral C32");
            c = m / 3;
          } else if (i == 2 && j == 3) {
            long m = M(_rs.add(s, r), s, 2);
            if ((2 * m) % 3)
              throw InternalError("non-integral C23");
            c = -2 * m / 3;
          } else
            throw InternalError("unexpected commutator term");
          if (c)
            terms.push_back({i, j, root, c});
        }
    }
}

std::vector<Chevalley::Term> Chevalley::commutator_terms(int a, int b) const
{
  // conj_terms(b, a): x_b(-t) x_a(u) x_b(t) = x_a(u) prod x_{ib+ja}(C (-t)^i u^j)
  // so x_a(u) x_b(t) = x_b(t) x_a(u) prod x_{ib+ja}(C (-t)^i u^j)
  std::vector<Term> res;
  for (auto const &t : conj_terms(b, a))
    res.push_back({t.j, t.i, t.root, (t.i % 2 ? -1 : 1) * t.coeff});
  return res;
}

namespace
{

// int64 that throws on overflow
struct Checked
{
  long v = 0;

  static Checked from_int(long x)
  { return Checked{x}; }

  bool is_zero() const
  { return v == 0; }

  Checked operator+(Checked o) const
  {
    long r;
    if (__builtin_add_overflow(v, o.v, &r))
      throw InternalError("integer overflow in commutator check");
    return Checked{r};
  }

  Checked operator*(Checked o) const
  {
    long r;
    if (__builtin_mul_overflow(v, o.v, &r))
      throw InternalError("integer overflow in commutator check");
    return Checked{r};
  }

  Checked &operator+=(Checked o)
  { return *this = *this + o; }

  Checked &operator*=(Checked o)
  { return *this = *this * o; }

  bool operator==(Checked const &) const = default;
};

long ipow(long x, int e)
{
  long r = 1;
  while (e-- > 0)
    r *= x;
  return r;
}

} // namespace

bool verify_commutators(Chevalley const &c,
                        std::vector<std::pair<long, long>> const &scalars,
                        std::string *failure, int full_basis_limit)
{
  RootSystem const &rs = c.roots();
  int D = c.dim();
  int R = rs.num_roots();

  std::vector<std::vector<Checked>> probes;
  if (D <= full_basis_limit) {
    for (int b = 0; b < D; ++b) {
      probes.emplace_back(D);
      probes.back()[b] = Checked{1};
    }
  } else {
    for (int k = 0; k < 3; ++k) {
      probes.emplace_back(D);
      for (int b = 0; b < D; ++b)
        probes.back()[b] = Checked{long((b * 7 + k * 13 + b * b * (k + 3)) % 11) - 5};
    }
  }

  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) {
      if (b == a || b == rs.neg(a))
        continue;
      auto terms = c.commutator_terms(a, b);
      for (auto [s, t] : scalars)
        for (auto const &p : probes) {
          auto lhs = p;
          apply_x(c, b, Checked{t}, lhs);
          apply_x(c, a, Checked{s}, lhs);
          auto rhs = p;
          for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            apply_x(c, it->root,
                    Checked{it->coeff * ipow(s, it->i) * ipow(t, it->j)}, rhs);
          apply_x(c, a, Checked{s}, rhs);
          apply_x(c, b, Checked{t}, rhs);
          if (!(lhs == rhs)) {
            if (failure)
              *failure = rs.str(a) + "," + rs.str(b);
            return false;
          }
        }
    }
  return true;
}

Context const &context(RootSystemType t)
{
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Context>> cache;

  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[t.name()];
  if (!slot)
    slot = std::make_unique<Context>(t);
  return *slot;
}

} // namespace chev
