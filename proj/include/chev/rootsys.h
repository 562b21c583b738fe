#ifndef GUARD_CHEV_ROOTSYS_H
#define GUARD_CHEV_ROOTSYS_H

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace chev
{

// Nodes are numbered 0..rank-1 internally; bit i of a NodeSet is node i+1
// in Bourbaki labelling.
using NodeSet = unsigned;
using Root = std::vector<int>;
using Coweight = std::vector<int>;

inline NodeSet node_bit(int i)
{ return NodeSet(1) << i; }

inline bool has_node(NodeSet s, int i)
{ return (s >> i) & 1u; }

NodeSet all_nodes(int rank);
std::vector<int> node_list(NodeSet s);
NodeSet node_set(std::vector<int> const &one_based);
std::string nodes_str(NodeSet s);

enum class Series { A, B, C, D, E, F, G };

struct RootSystemType
{
  Series series;
  int rank;

  std::string name() const;
  bool buildable() const;

  static RootSystemType parse(std::string const &s);

  bool operator==(RootSystemType const &) const = default;
};

struct PolarData
{
  NodeSet polar = 0;
  NodeSet dual_polar = 0;
  NodeSet copolar = 0;
  bool has_dual_polar = false;
  bool has_copolar = false;
};

PolarData classical_polar_data(RootSystemType t);

// Roots are referred to by index: 0..N-1 are the positive roots in canonical
// order (height ascending, then coefficient vectors lexicographically
// descending), and N+k is the negative of root k.
class RootSystem
{
public:
  explicit RootSystem(RootSystemType t);

  RootSystemType type() const
  { return _type; }

  int rank() const
  { return _rank; }

  int num_pos() const
  { return _npos; }

  int num_roots() const
  { return 2 * _npos; }

  Root const &root(int idx) const
  { return _roots[idx]; }

  int coeff(int idx, int i) const
  { return _roots[idx][i]; }

  int index(Root const &r) const;
  int index_or_throw(Root const &r) const;

  int neg(int idx) const
  { return idx < _npos ? idx + _npos : idx - _npos; }

  bool positive(int idx) const
  { return idx < _npos; }

  int simple(int i) const
  { return _simple[i]; }

  // node i if idx is a simple root, else -1
  int simple_node(int idx) const;

  int height(int idx) const
  { return _height[idx]; }

  // scaled symmetric form, integer valued
  int inner(int a, int b) const
  { return _inner[a * num_roots() + b]; }

  int norm(int a) const
  { return inner(a, a); }

  bool is_long(int a) const
  { return norm(a) == _long_norm; }

  int long_norm() const
  { return _long_norm; }

  bool simply_laced() const
  { return _short_norm == _long_norm; }

  // <alpha_i, alpha_j^vee>
  int cartan(int i, int j) const
  { return _cartan[i * _rank + j]; }

  int form(int i, int j) const
  { return _form[i * _rank + j]; }

  // <beta, alpha^vee>
  int coroot_pairing(int beta, int alpha) const;

  // coefficients of alpha^vee over the simple coroots
  std::vector<int> coroot_coeffs(int alpha) const;

  int pairing(Coweight const &lambda, int alpha) const;
  Coweight fundamental_coweight(int i) const;

  // index of a+b, or -1
  int add(int a, int b) const
  { return _sum[a * num_roots() + b]; }

  int highest_root() const
  { return _highest; }

  // -1 when simply laced
  int highest_short_root() const
  { return _highest_short; }

  PolarData polar_data() const;

  // highest root of the subsystem spanned by the simple roots in K; K
  // must be connected
  int highest_root_of(NodeSet K, bool short_root = false) const;
  bool in_span(int idx, NodeSet K) const;
  NodeSet support(int idx) const;

  std::vector<NodeSet> components(NodeSet K) const;
  NodeSet polar_nodes(NodeSet K) const;
  NodeSet dual_polar_nodes(NodeSet K) const;

  bool dominates(int b, int a) const;
  std::vector<int> closure_up(std::vector<int> const &A) const;

  std::string str(int idx) const;
  int parse(std::string const &digits) const;

  std::vector<Root> positive_roots() const;

private:
  RootSystemType _type;
  int _rank;
  int _npos;
  std::vector<int> _form;
  std::vector<int> _cartan;
  std::vector<Root> _roots;
  std::vector<int> _height;
  std::vector<int> _simple;
  std::vector<int> _inner;
  std::vector<int> _sum;
  std::unordered_map<std::int64_t, int> _lookup;
  int _highest = -1;
  int _highest_short = -1;
  int _long_norm = 0;
  int _short_norm = 0;

  static std::int64_t key(Root const &r);
};

std::vector<Root> read_root_table(std::string const &path);

} // namespace chev

#endif // GUARD_CHEV_ROOTSYS_H
