#ifndef GUARD_CHEV_CHEVALLEY_H
#define GUARD_CHEV_CHEVALLEY_H

#include <memory>
#include <string>
#include <vector>

#include "field.h"
#include "rootsys.h"
#include "weyl.h"

namespace chev
{

// Integer data of a Chevalley basis: h_1..h_n followed by e_alpha for every
// root index alpha (basis index rank + alpha).
class Chevalley
{
public:
  struct Entry
  {
    int to;
    int power;
    long coeff;
  };

  struct Term
  {
    int i, j, root;
    long coeff;
  };

  explicit Chevalley(RootSystem const &rs);

  RootSystem const &roots() const
  { return _rs; }

  int dim() const
  { return _rs.rank() + _rs.num_roots(); }

  int basis_of_root(int alpha) const
  { return _rs.rank() + alpha; }

  // N_{alpha,beta}; zero when alpha+beta is not a root
  int N(int a, int b) const
  { return _N[a * _rs.num_roots() + b]; }

  // x_alpha(t) e_b = sum over entries of coeff * t^power * e_to
  std::vector<Entry> const &x_column(int alpha, int b) const
  { return _xcol[alpha * dim() + b]; }

  // n_i e_beta = eta * e_{s_i beta}, n_i = x_i(1) x_{-i}(-1) x_i(1)
  int eta(int i, int beta) const
  { return _eta[i * _rs.num_roots() + beta]; }

  // x_r(-t) x_s(u) x_r(t) = x_s(u) prod x_{ir+js}(C (-t)^i u^j)
  std::vector<Term> const &conj_terms(int r, int s) const
  { return _conj[r * _rs.num_roots() + s]; }

  // x_a(a) x_b(b) = x_b(b) x_a(a) prod x_{ia+jb}(C a^i b^j)
  std::vector<Term> commutator_terms(int a, int b) const;

  // [e_a, e_b] as a sparse integer vector over the basis
  std::vector<std::pair<int, long>> bracket(int basis_a, int basis_b) const;

  bool check_jacobi(std::string *failure = nullptr) const;

private:
  RootSystem const &_rs;
  std::vector<int> _N;
  std::vector<std::vector<Entry>> _xcol;
  std::vector<int> _eta;
  std::vector<std::vector<Term>> _conj;

  void compute_structure_constants();
  void compute_columns();
  void compute_eta();
  void compute_conj_terms();
};

struct Context
{
  RootSystem rs;
  Weyl weyl;
  Chevalley chev;

  explicit Context(RootSystemType t) : rs(t), weyl(rs), chev(rs) {}
};

// Shared, lazily built and never destroyed.
Context const &context(RootSystemType t);

// v <- x_alpha(t) v in the adjoint representation
template<typename F>
void apply_x(Chevalley const &c, int alpha, F const &t, std::vector<F> &v)
{
  F pw[5];
  pw[0] = F::from_int(1);
  for (int k = 1; k < 5; ++k)
    pw[k] = pw[k - 1] * t;
  std::vector<F> out = v;
  for (int b = 0; b < c.dim(); ++b) {
    if (v[b].is_zero())
      continue;
    for (auto const &e : c.x_column(alpha, b))
      if (e.power > 0)
        out[e.to] += F::from_int(e.coeff) * pw[e.power] * v[b];
  }
  v.swap(out);
}

// v <- h v for the torus element with values chi on the simple roots
template<typename F>
void apply_h(Chevalley const &c, std::vector<F> const &chi, std::vector<F> &v)
{
  RootSystem const &rs = c.roots();
  for (int a = 0; a < rs.num_roots(); ++a) {
    F &x = v[c.basis_of_root(a)];
    if (x.is_zero())
      continue;
    for (int i = 0; i < rs.rank(); ++i) {
      int k = rs.coeff(a, i);
      if (k)
        x *= field_pow(chi[i], k);
    }
  }
}

// v <- n_i v
template<typename F>
void apply_n(Chevalley const &c, int i, std::vector<F> &v)
{
  int a = c.roots().simple(i);
  apply_x(c, a, F::from_int(1), v);
  apply_x(c, c.roots().neg(a), F::from_int(-1), v);
  apply_x(c, a, F::from_int(1), v);
}

// Checks every commutator relation in the adjoint representation with
// overflow-checked integer arithmetic, at the scalar pairs given.  Groups of
// dimension above full_basis_limit are checked on the probe vectors only.
bool verify_commutators(Chevalley const &c,
                        std::vector<std::pair<long, long>> const &scalars,
                        std::string *failure = nullptr,
                        int full_basis_limit = 80);

} // namespace chev

#endif // GUARD_CHEV_CHEVALLEY_H
