#ifndef GUARD_CHEV_ADJOINT_H
#define GUARD_CHEV_ADJOINT_H

#include <string>
#include <vector>

#include "chevalley.h"
#include "errors.h"

namespace chev
{

// Dense square matrix in the Chevalley basis.
template<typename F>
class Matrix
{
public:
  Matrix() = default;
  explicit Matrix(int n) : _n(n), _a(std::size_t(n) * n) {}

  static Matrix identity(int n)
  {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
      m(i, i) = F::from_int(1);
    return m;
  }

  int dim() const
  { return _n; }

  F &operator()(int r, int c)
  { return _a[std::size_t(r) * _n + c]; }

  F const &operator()(int r, int c) const
  { return _a[std::size_t(r) * _n + c]; }

  Matrix operator*(Matrix const &o) const
  {
    Matrix m(_n);
    for (int i = 0; i < _n; ++i)
      for (int k = 0; k < _n; ++k) {
        F const &x = (*this)(i, k);
        if (x.is_zero())
          continue;
        for (int j = 0; j < _n; ++j)
          if (!o(k, j).is_zero())
            m(i, j) += x * o(k, j);
      }
    return m;
  }

  bool operator==(Matrix const &o) const
  { return _n == o._n && _a == o._a; }

  bool is_identity() const
  { return *this == identity(_n); }

  // byte string usable as a hash key over finite fields
  std::string key() const
  {
    std::string s;
    s.reserve(_a.size());
    for (auto const &x : _a)
      s.push_back(char(x.index()));
    return s;
  }

  std::vector<F> column(int c) const
  {
    std::vector<F> v(_n);
    for (int r = 0; r < _n; ++r)
      v[r] = (*this)(r, c);
    return v;
  }

  void set_column(int c, std::vector<F> const &v)
  {
    for (int r = 0; r < _n; ++r)
      (*this)(r, c) = v[r];
  }

private:
  int _n = 0;
  std::vector<F> _a;
};

template<typename F>
Matrix<F> gen_x(Chevalley const &c, int alpha, F const &a)
{
  Matrix<F> m(c.dim());
  for (int b = 0; b < c.dim(); ++b) {
    std::vector<F> v(c.dim());
    v[b] = F::from_int(1);
    apply_x(c, alpha, a, v);
    m.set_column(b, v);
  }
  return m;
}

// torus element prod h_{omega_i}(c_i), given by its values chi on simple roots
template<typename F>
Matrix<F> gen_h(Chevalley const &c, std::vector<F> const &chi)
{
  for (auto const &x : chi)
    if (x.is_zero())
      throw ZeroScalar("torus scalar must be nonzero");
  Matrix<F> m = Matrix<F>::identity(c.dim());
  std::vector<F> diag(c.dim(), F::from_int(1));
  apply_h(c, chi, diag);
  for (int b = 0; b < c.dim(); ++b)
    m(b, b) = diag[b];
  return m;
}

// h_lambda(c) for a coweight lambda in fundamental coweight coordinates
template<typename F>
std::vector<F> coweight_chi(RootSystem const &rs, Coweight const &lambda,
                            F const &c)
{
  if (int(lambda.size()) != rs.rank())
    throw DimensionMismatch("coweight has wrong length");
  std::vector<F> chi(rs.rank());
  for (int j = 0; j < rs.rank(); ++j)
    chi[j] = field_pow(c, lambda[j]);
  return chi;
}

// h_{alpha^vee}(c): value c^{<alpha_j, alpha^vee>} on alpha_j
template<typename F>
std::vector<F> coroot_chi(RootSystem const &rs, int alpha, F const &c)
{
  std::vector<F> chi(rs.rank());
  for (int j = 0; j < rs.rank(); ++j)
    chi[j] = field_pow(c, rs.coroot_pairing(rs.simple(j), alpha));
  return chi;
}

// s_alpha(c) = x_alpha(c) x_{-alpha}(-1/c) x_alpha(c)
template<typename F>
Matrix<F> gen_n(Chevalley const &c, int alpha, F const &s)
{
  if (s.is_zero())
    throw ZeroScalar("s_alpha(c) needs c != 0");
  int neg = c.roots().neg(alpha);
  return gen_x(c, alpha, s) * gen_x(c, neg, -(F::from_int(1) / s)) *
         gen_x(c, alpha, s);
}

} // namespace chev

#endif // GUARD_CHEV_ADJOINT_H
