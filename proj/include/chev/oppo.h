#ifndef GUARD_CHEV_OPPO_H
#define GUARD_CHEV_OPPO_H

#include <optional>
#include <string>
#include <vector>

#include "chevalley.h"
#include "errors.h"
#include "groupnf.h"
#include "rootsys.h"
#include "weyl.h"

namespace chev
{

// An admissible Dynkin diagram.  The encircled set lists every node, so
// for the twisted E6 diagrams both nodes of a pi_0-orbit are present.
struct Diagram
{
  RootSystemType type;
  NodeSet encircled = 0;
  int twist = 1;
  std::string name;
  bool type_preserving = true;
  bool computable = true;

  bool operator==(Diagram const &o) const
  { return type == o.type && name == o.name; }
};

// The admissible diagrams of a type.  With special set, the extra Coxeter
// diagrams of special characteristic are appended.
std::vector<Diagram> catalogue(RootSystemType t, bool special = false);

// Diagram by catalogue name ("E7;3", "2E6;2", "F4;1^4"); ParseError if absent.
Diagram find_diagram(RootSystemType t, std::string const &name);

// Type preserving catalogue diagram with the given encircled set, if any.
std::optional<Diagram> diagram_with_nodes(RootSystemType t, NodeSet J);

std::string diagram_text(Diagram const &d);

// l(w_{S\J} w_0)
int capped_displacement(Weyl const &W, Diagram const &d);

// Highest roots removed by the polar (or dual polar) stripping process, if
// it empties the diagram.
std::optional<std::vector<int>> polar_closed_sequence(RootSystem const &rs,
                                                      Diagram const &d);
std::optional<std::vector<int>>
dual_polar_closed_sequence(RootSystem const &rs, Diagram const &d);

// x_{phi_1}(a_1) ... x_{phi_k}(a_k) for a polar closed diagram
template<typename F>
Word<F> generic_unipotent(RootSystem const &rs, Diagram const &d,
                          std::vector<F> const &scalars, bool dual = false)
{
  auto seq = dual ? dual_polar_closed_sequence(rs, d)
                  : polar_closed_sequence(rs, d);
  if (!seq)
    throw NotGeneric(d.name + (dual ? " is not dual polar closed"
                                    : " is not polar closed"));
  if (scalars.size() != seq->size())
    throw DimensionMismatch(d.name + " needs " + std::to_string(seq->size()) +
                            " scalars");
  Word<F> w;
  for (std::size_t k = 0; k < seq->size(); ++k) {
    if (scalars[k].is_zero())
      throw NotGeneric("generic elements have nonzero scalars");
    w.push_back(Token<F>::x((*seq)[k], scalars[k]));
  }
  return w;
}

struct UpperBound
{
  int raw = 0;      // 2 l(w1) - 1
  int demazure = 0; // l(w1 * w1^{-1}) in the Demazure product
  int bound = 0;    // min of the two, capped at l(w_0)
  int rounded = 0;  // largest capped displacement not above bound
};

// Bound for theta in <U_alpha | alpha in A>, A positive.  Checks
// pi_0(A_>=) inside Phi(w1).
UpperBound displacement_upper_standard(Weyl const &W, std::vector<int> const &A,
                                       WeylElement const &w1);

// Largest capped displacement of a type preserving diagram not above b.
int round_to_catalogue(Weyl const &W, int b);

// Subsystem fixed by a torus element, or any closed root subsystem.
struct Subsystem
{
  std::vector<int> positive;
  std::vector<int> simple;
  std::vector<std::string> components;
  std::string label;

  bool contains(int root) const;
};

// Identifies a closed subsystem given by its positive roots.
Subsystem identify_subsystem(RootSystem const &rs, std::vector<int> positive);

template<typename F>
Subsystem homology_root_system(Context const &ctx,
                               std::vector<std::pair<int, F>> const &torus)
{
  RootSystem const &rs = ctx.rs;
  std::vector<F> chi(rs.rank(), F::from_int(1));
  for (auto const &[node, c] : torus) {
    if (c.is_zero())
      throw ZeroScalar("torus scalar must be nonzero");
    if (node < 0 || node >= rs.rank())
      throw DimensionMismatch("torus node out of range");
    chi[node] *= c;
  }
  std::vector<int> pos;
  for (int a = 0; a < rs.num_pos(); ++a) {
    F v = F::from_int(1);
    for (int j = 0; j < rs.rank(); ++j)
      v *= field_pow(chi[j], rs.coeff(a, j));
    if (v.is_one())
      pos.push_back(a);
  }
  return identify_subsystem(rs, pos);
}

struct HomologyVerdict
{
  bool domestic = false;
  std::optional<Diagram> diagram;
};

HomologyVerdict classify_homology(RootSystemType t, Subsystem const &sub);

// l(s_{b_1} ... s_{b_k}) for mutually perpendicular witnesses outside sub
int displacement_lower_perp(Weyl const &W, Subsystem const &sub,
                            std::vector<int> const &witnesses);

// Opposition forced by attained chamber displacements: the union of the
// pi_0-orbits O with some attained w in W_{S\O} w_0 W_{S\O}.
NodeSet forced_types(Weyl const &W, std::vector<WeylElement> const &attained);

// Unique type preserving admissible diagram compatible with the attained
// cells and the upper bound; nullopt when several remain.
std::optional<Diagram> pin_diagram(Weyl const &W,
                                   std::vector<WeylElement> const &attained,
                                   int upper);

struct SkippedDistances
{
  std::vector<int> fixed_part;   // Y: long roots with s_alpha in W'
  std::vector<int> orbit;        // W' . alpha_p
  int phi = -1;
  std::vector<WeylElement> reps; // R_p
  std::vector<WeylElement> attained;
  std::vector<WeylElement> skipped;
};

SkippedDistances skipped_distances(Weyl const &W);

// Every reflection lies in W_i u W_i s_i W_i.
bool skipping_holds(Weyl const &W, int node);

// Data of one nondomestic homology case read from a witness file.
struct WitnessCase
{
  std::string file;
  RootSystemType type{Series::E, 6};
  std::string label;
  std::vector<int> positive;
  std::vector<int> witnesses;
  int expect = -1;
};

WitnessCase read_witness_case(RootSystem const &rs, std::string const &path);
std::vector<std::string> witness_files(std::string const &dir,
                                       RootSystemType t);

// Weyl element from a product of factors separated by spaces: "s3" (simple
// reflection, 1-based), "w0", "w[1234]" (longest element of a parabolic),
// "r2234321" (reflection in a positive root).
WeylElement weyl_expr(Weyl const &W, std::string const &text);

// A conjugated standard-technique certificate: theta is replaced by
// v^{-1} theta v, whose root set must be positive.  With search set the
// conjugator (F4, G2 only) and w1 are found by exhaustive search.
struct PinFixture
{
  std::string diagram;
  std::string conj;
  std::string w1;
  bool search = false;
};

std::vector<PinFixture> pin_fixtures(RootSystemType t);

struct PinBound
{
  WeylElement conj;
  WeylElement w1;
  std::vector<int> roots; // v^{-1} phi_j
  UpperBound bound;
};

// Upper bound for the generic element of a polar closed diagram.
PinBound pin_bound(Weyl const &W, PinFixture const &fx);

// Minimal Demazure square l(w1 * w1^{-1}) over all w1 with
// pi_0(A_>=) in Phi(w1).  Exhaustive for F4 and G2; in E types only the
// single root case {phi} is handled, by a descending chain.
WeylElement search_w1(Weyl const &W, std::vector<int> const &A);

struct PinResult
{
  Diagram claimed;
  WeylElement witness;
  PinBound bound;
  std::optional<Diagram> pinned;
};

// Pins the generic element x_{phi_1}(1)...x_{phi_k}(1) of a polar closed
// diagram from its cell at the chamber w_0 B and the fixture bound.
template<typename F>
PinResult pin_unipotent(Context const &ctx, PinFixture const &fx)
{
  Diagram d = find_diagram(ctx.rs.type(), fx.diagram);
  auto seq = polar_closed_sequence(ctx.rs, d);
  if (!seq)
    throw NotGeneric(d.name + " is not polar closed");
  Word<F> theta = generic_unipotent(
    ctx.rs, d, std::vector<F>(seq->size(), F::from_int(1)));
  Engine<F> eng(ctx);
  Word<F> word = eng.inverse({Token<F>::w0()});
  word.insert(word.end(), theta.begin(), theta.end());
  word.push_back(Token<F>::w0());

  PinResult r;
  r.claimed = d;
  r.witness = eng.cell(word);
  r.bound = pin_bound(ctx.weyl, fx);
  r.pinned = pin_diagram(ctx.weyl, {r.witness}, r.bound.bound.rounded);
  return r;
}

} // namespace chev

#endif // GUARD_CHEV_OPPO_H
