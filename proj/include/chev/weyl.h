#ifndef GUARD_CHEV_WEYL_H
#define GUARD_CHEV_WEYL_H

#include <cstdint>
#include <functional>
#include <vector>

#include "rootsys.h"

namespace chev
{

// A Weyl group element as the permutation it induces on root indices.
struct WeylElement
{
  std::vector<std::uint8_t> perm;

  int operator()(int root) const
  { return perm[root]; }

  bool operator==(WeylElement const &) const = default;
};

class Weyl
{
public:
  explicit Weyl(RootSystem const &rs);

  RootSystem const &roots() const
  { return _rs; }

  int rank() const
  { return _rs.rank(); }

  WeylElement identity() const;
  WeylElement s(int i) const
  { return _simple_refl[i]; }
  WeylElement reflection(int alpha) const;

  WeylElement mul(WeylElement const &a, WeylElement const &b) const;
  WeylElement mul_s(WeylElement const &w, int i) const;
  WeylElement s_mul(int i, WeylElement const &w) const;
  WeylElement inverse(WeylElement const &w) const;

  int length(WeylElement const &w) const;
  std::vector<int> inversion_set(WeylElement const &w) const;

  bool right_descent(WeylElement const &w, int i) const
  { return !_rs.positive(w(_rs.simple(i))); }

  bool left_descent(WeylElement const &w, int i) const;

  std::vector<int> reduced_word(WeylElement const &w) const;
  WeylElement from_word(std::vector<int> const &word) const;

  WeylElement longest(NodeSet J) const;
  WeylElement w0() const
  { return _w0; }

  // pi_0 as a permutation of 0-based nodes
  std::vector<int> const &opposition_map() const
  { return _pi0; }
  NodeSet pi0(NodeSet J) const;

  bool in_parabolic(WeylElement const &w, NodeSet J) const;

  WeylElement double_coset_rep(WeylElement w, NodeSet J, NodeSet K) const;
  bool same_double_coset(WeylElement const &a, WeylElement const &b,
                         NodeSet J, NodeSet K) const;

  // minimal length representatives of W/W_K
  std::vector<WeylElement> min_coset_reps(NodeSet K,
                                          std::size_t budget = 2000000) const;
  std::vector<WeylElement> min_double_coset_reps(NodeSet J, NodeSet K) const;

  std::vector<int> orbit(NodeSet J, int alpha) const;

  int min_occurrences(WeylElement const &w, int i) const;

  WeylElement demazure(WeylElement const &x, WeylElement const &y) const;

  std::uint64_t key(WeylElement const &w) const;
  WeylElement from_key(std::uint64_t k) const;

  std::string word_str(WeylElement const &w) const;

private:
  RootSystem const &_rs;
  std::vector<WeylElement> _simple_refl;
  WeylElement _w0;
  std::vector<int> _pi0;
};

struct WeylKeyHash
{
  std::size_t operator()(std::uint64_t k) const
  { return std::hash<std::uint64_t>()(k * 0x9E3779B97F4A7C15ull); }
};

} // namespace chev

#endif // GUARD_CHEV_WEYL_H
