#include <chrono>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "chev/field.h"
#include "chev/oppo.h"
#include "chev/parse.h"
#include "chev/scan.h"
#include "chev/verify.h"

using namespace chev;
using json = nlohmann::json;

namespace
{

enum Exit
{
  Ok = 0,
  CheckFailed = 1,
  Usage = 2,
  Infeasible = 3
};

struct Options
{
  std::string type = "G2";
  std::string field = "f2";
  std::string expr = "1";
  std::string strategy = "auto";
  std::string scan = "auto";
  std::string format = "json";
  std::string fixtures = CHEV_FIXTURE_DIR;
  std::string checkpoint;
  std::string torus;
  std::string suite;
  int threads = 1;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  bool timing = false;
  bool special = false;
};

template<typename Fn>
auto with_field(std::string const &f, Fn fn)
{
  if (f == "f2")
    return fn(Fp<2>{});
  if (f == "f3")
    return fn(Fp<3>{});
  if (f == "f4")
    return fn(GF4{});
  if (f == "f5")
    return fn(Fp<5>{});
  if (f == "f7")
    return fn(Fp<7>{});
  if (f == "q")
    return fn(Rational{});
  throw ParseError("unknown field '" + f + "' (f2, f3, f4, f5, f7, q)");
}

Context const &ctx_of(Options const &o)
{ return context(RootSystemType::parse(o.type)); }

std::string word_of(Weyl const &W, WeylElement const &w)
{
  std::string s;
  for (int i : W.reduced_word(w))
    s += (s.empty() ? "s" : " s") + std::to_string(i + 1);
  return s.empty() ? "e" : s;
}

json diagram_json(Diagram const &d)
{
  std::vector<int> nodes;
  for (int i : node_list(d.encircled))
    nodes.push_back(i + 1);
  return {{"name", d.name}, {"encircled", nodes}, {"twist", d.twist}};
}

void emit(Options const &o, json const &j, std::string const &text)
{
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

template<typename F>
json scan_json(Context const &c, ScanReport const &r)
{
  json cells = json::array();
  for (auto const &[w, n] : r.cells)
    cells.push_back({{"cell", word_of(c.weyl, w)},
                     {"length", c.weyl.length(w)},
                     {"chambers", n}});
  return cells;
}

template<typename F>
int diagram_scan(Options const &o, Context const &c, Word<F> const &theta,
                 json &out, std::string &text)
{
  if constexpr (!F::finite) {
    throw PlanTooLarge("scans need a finite field; use --strategy bounds");
  } else {
    ScanPlan<F> p;
    p.theta = theta;
    p.label = print_element<F>(c.rs, theta);
    p.threads = o.threads;
    p.seed = o.seed;
    p.samples = o.samples;
    p.checkpoint = o.checkpoint;
    ScanReport r;
    if (o.scan == "auto") {
      p.strategy = Strategy::OppositeSphere;
      try {
        r = scan_displacement(c, p);
      } catch (Red2Unavailable const &) {
        p.strategy = Strategy::FullChambers;
        r = scan_displacement(c, p);
      }
    } else {
      p.strategy = parse_strategy(o.scan);
      r = scan_displacement(c, p);
    }
    out["method"] = "scan/" + strategy_name(p.strategy);
    out["chambers"] = r.chambers;
    out["attained"] = scan_json<F>(c, r);
    json disp = {{"lower", r.displacement}};
    if (r.exhaustive) {
      disp["upper"] = r.displacement;
      disp["exact"] = true;
    } else {
      disp["upper"] = c.rs.num_pos();
      disp["exact"] = false;
    }
    out["displacement"] = disp;
    if (r.capped)
      out["capped"] = *r.capped;
    if (r.diagram)
      out["diagram"] = diagram_json(*r.diagram);
    text = "method: " + out["method"].get<std::string>() + "\n" +
           "chambers: " + std::to_string(r.chambers) + "\n" +
           "displacement: " + std::to_string(r.displacement) +
           (r.exhaustive ? "" : " (lower bound)") + "\n";
    for (auto const &[w, n] : r.cells)
      text += "  " + word_of(c.weyl, w) + "  x" + std::to_string(n) + "\n";
    text += "diagram: " + (r.diagram ? diagram_text(*r.diagram) : "unknown") +
            "\n";
    return Ok;
  }
}

template<typename F>
int diagram_bounds(Context const &c, Word<F> const &theta, json &out,
                   std::string &text)
{
  Weyl const &W = c.weyl;
  std::vector<int> roots;
  for (auto const &t : theta) {
    if (t.kind != TokenKind::X || !c.rs.positive(t.root))
      throw PlanTooLarge("bounds need a product of positive root elements; "
                         "use --strategy scan");
    if (!t.scalar.is_zero())
      roots.push_back(t.root);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  Engine<F> eng(c);
  std::vector<WeylElement> attained{eng.cell(theta)};
  Word<F> at_w0 = eng.inverse({Token<F>::w0()});
  at_w0.insert(at_w0.end(), theta.begin(), theta.end());
  at_w0.push_back(Token<F>::w0());
  attained.push_back(eng.cell(at_w0));

  // a fixture certificate covers any element of its root groups
  std::optional<UpperBound> best;
  std::string source;
  for (auto const &fx : pin_fixtures(c.rs.type())) {
    auto seq = polar_closed_sequence(c.rs, find_diagram(c.rs.type(), fx.diagram));
    if (!seq)
      continue;
    if (!std::all_of(roots.begin(), roots.end(), [&](int r) {
          return std::find(seq->begin(), seq->end(), r) != seq->end();
        }))
      continue;
    auto pb = pin_bound(W, fx);
    if (!best || pb.bound.rounded < best->rounded) {
      best = pb.bound;
      source = fx.diagram;
    }
  }
  if (!best) {
    best = displacement_upper_standard(W, roots, search_w1(W, roots));
    source = "search";
  }

  int lower = 0;
  for (auto const &w : attained)
    lower = std::max(lower, W.length(w));
  int upper = best->rounded;
  std::optional<Diagram> d;
  try {
    d = pin_diagram(W, attained, upper);
  } catch (Inconsistent const &) {
  }

  json cells = json::array();
  for (auto const &w : attained)
    cells.push_back({{"cell", word_of(W, w)}, {"length", W.length(w)}});
  out["method"] = "bounds";
  out["attained"] = cells;
  out["bound"] = {{"raw", best->raw},
                  {"demazure", best->demazure},
                  {"rounded", best->rounded},
                  {"certificate", source}};
  out["displacement"] = {{"lower", lower}, {"upper", upper},
                         {"exact", lower == upper}};
  if (d)
    out["diagram"] = diagram_json(*d);
  text = "method: bounds\ndisplacement: " + std::to_string(lower) + " .. " +
         std::to_string(upper) + "\n" +
         "diagram: " + (d ? diagram_text(*d) : "unknown") + "\n";
  return Ok;
}

int cmd_diagram(Options const &o)
{
  auto const &c = ctx_of(o);
  return with_field(o.field, [&](auto f) {
    using F = decltype(f);
    auto start = std::chrono::steady_clock::now();
    Word<F> theta = parse_element<F>(c.rs, o.expr);
    json out = {{"type", c.rs.type().name()},
                {"field", o.field},
                {"element", print_element<F>(c.rs, theta)}};
    std::string text;
    std::string s = o.strategy;
    if (s == "auto") {
      bool small = false;
      if constexpr (F::finite)
        small = c.rs.rank() <= 4 && F::order <= 4;
      s = small ? "scan" : "bounds";
    }
    int rc;
    if (s == "scan")
      rc = diagram_scan<F>(o, c, theta, out, text);
    else if (s == "bounds")
      rc = diagram_bounds<F>(c, theta, out, text);
    else
      throw ParseError("unknown strategy '" + s + "' (auto, scan, bounds)");
    if (o.timing)
      out["runtime_ms"] = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    emit(o, out, "element: " + out["element"].get<std::string>() + "\n" + text);
    return rc;
  });
}

int cmd_normalize(Options const &o)
{
  auto const &c = ctx_of(o);
  return with_field(o.field, [&](auto f) {
    using F = decltype(f);
    Word<F> theta = parse_element<F>(c.rs, o.expr);
    Engine<F> eng(c);
    auto nf = eng.normalize(theta);
    Word<F> w = eng.to_word(nf);
    bool ok = eng.same_element(theta, w);
    json out = {{"type", c.rs.type().name()},
                {"field", o.field},
                {"element", print_element<F>(c.rs, theta)},
                {"normal_form", print_element<F>(c.rs, w)},
                {"cell", word_of(c.weyl, nf.w)},
                {"cell_length", c.weyl.length(nf.w)},
                {"checked", ok}};
    emit(o, out,
         "element: " + print_element<F>(c.rs, theta) + "\n" +
           "normal form: " + print_element<F>(c.rs, w) + "\n" +
           "cell: " + word_of(c.weyl, nf.w) + "\n");
    return ok ? Ok : CheckFailed;
  });
}

int cmd_catalogue(Options const &o)
{
  auto const &c = ctx_of(o);
  json list = json::array();
  std::string text;
  for (auto const &d : catalogue(c.rs.type(), o.special)) {
    json j = diagram_json(d);
    j["type_preserving"] = d.type_preserving;
    if (d.type_preserving) {
      j["capped_displacement"] = capped_displacement(c.weyl, d);
      text += diagram_text(d) + "  " +
              std::to_string(capped_displacement(c.weyl, d)) + "\n";
    } else {
      text += diagram_text(d) + "\n";
    }
    if (auto seq = polar_closed_sequence(c.rs, d)) {
      std::vector<std::string> roots;
      for (int r : *seq)
        roots.push_back(c.rs.str(r));
      j["polar_closed"] = roots;
    }
    list.push_back(j);
  }
  emit(o, {{"type", c.rs.type().name()}, {"diagrams", list}}, text);
  return Ok;
}

int cmd_homology(Options const &o)
{
  auto const &c = ctx_of(o);
  return with_field(o.field, [&](auto f) {
    using F = decltype(f);
    Word<F> h = parse_element<F>(c.rs, "h[" + o.torus + "]");
    auto sub = homology_root_system<F>(c, h.at(0).torus);
    auto v = classify_homology(c.rs.type(), sub);
    json out = {{"type", c.rs.type().name()},
                {"field", o.field},
                {"torus", o.torus},
                {"fixed_roots", sub.positive.size()},
                {"subsystem", sub.label},
                {"domestic", v.domestic}};
    if (v.diagram)
      out["diagram"] = diagram_json(*v.diagram);
    emit(o, out,
         "subsystem: " + (sub.label.empty() ? "empty" : sub.label) + "\n" +
           "domestic: " + (v.domestic ? "yes" : "no") + "\n" +
           (v.diagram ? "diagram: " + diagram_text(*v.diagram) + "\n" : ""));
    return Ok;
  });
}

int cmd_fixed(Options const &o)
{
  auto const &c = ctx_of(o);
  return with_field(o.field, [&](auto f) {
    using F = decltype(f);
    Word<F> theta = parse_element<F>(c.rs, o.expr);
    auto r = classify_fixed_structure_g2<F>(c, theta);
    json out = {{"type", c.rs.type().name()},
                {"field", o.field},
                {"element", print_element<F>(c.rs, theta)},
                {"structure", fixed_structure_name(r.kind)},
                {"points", r.points},
                {"lines", r.lines},
                {"fixed_points", r.fixed_points},
                {"fixed_lines", r.fixed_lines}};
    emit(o, out,
         "structure: " + fixed_structure_name(r.kind) + "\n" +
           "fixed: " + std::to_string(r.fixed_points) + " of " +
           std::to_string(r.points) + " points, " +
           std::to_string(r.fixed_lines) + " of " + std::to_string(r.lines) +
           " lines\n");
    return Ok;
  });
}

int cmd_verify(Options const &o)
{
  VerifyOptions vo;
  vo.threads = o.threads;
  vo.seed = o.seed;
  vo.fixtures = o.fixtures;
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else
    names = {o.suite};
  std::vector<SuiteResult> results;
  for (auto const &n : names)
    results.push_back(run_suite(n, vo));

  bool ok = true;
  json suites = json::array();
  std::string text;
  for (auto const &r : results) {
    ok = ok && r.ok();
    json checks = json::array();
    text += "[" + r.suite + "]\n";
    for (auto const &c : r.checks) {
      checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      text += format_check(c) + "\n";
    }
    text += std::to_string(r.checks.size() - r.failures()) + "/" +
            std::to_string(r.checks.size()) + " checks passed\n";
    json s = {{"suite", r.suite}, {"checks", checks}, {"ok", r.ok()}};
    if (o.timing)
      s["seconds"] = r.seconds;
    suites.push_back(s);
  }
  emit(o, {{"suites", suites}, {"ok", ok}}, text);
  return ok ? Ok : CheckFailed;
}

void common(CLI::App *app, Options &o, bool element)
{
  app->add_option("--type", o.type, "E6, E7, E8, F4 or G2");
  if (element) {
    app->add_option("--field", o.field, "f2, f3, f4, f5, f7 or q");
    app->add_option("--expr", o.expr, "group element, e.g. x[2342](1)*s1");
  }
  app->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Opposition diagrams of automorphisms of exceptional "
               "Chevalley groups"};
  app.require_subcommand(1);
  Options o;

  auto *diagram = app.add_subcommand("diagram", "opposition diagram of an element");
  common(diagram, o, true);
  diagram->add_option("--strategy", o.strategy, "auto, scan or bounds");
  diagram->add_option("--scan", o.scan,
                      "auto, full_chambers, opposite_sphere or sampled");
  diagram->add_option("--samples", o.samples);
  diagram->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  diagram->add_option("--seed", o.seed);
  diagram->add_option("--checkpoint", o.checkpoint);
  diagram->add_flag("--timing", o.timing);

  auto *normalize = app.add_subcommand("normalize", "Bruhat normal form");
  common(normalize, o, true);

  auto *cat = app.add_subcommand("catalogue", "admissible diagrams of a type");
  common(cat, o, false);
  cat->add_flag("--special", o.special, "include the special characteristic diagrams");

  auto *hom = app.add_subcommand("homology", "fixed root system of a torus element");
  common(hom, o, true);
  hom->add_option("--torus", o.torus, "i:c,... meaning prod h_wi(c)")->required();

  auto *fixed = app.add_subcommand("fixed", "fixed structure in the G2 hexagon");
  common(fixed, o, true);

  auto *verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "suite name or all")->required();
  verify->add_option("--threads", o.threads)->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed);
  verify->add_option("--fixtures", o.fixtures);
  verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
  verify->add_flag("--timing", o.timing);
  o.format = "json";

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }
  if (verify->parsed() && o.format == "json" &&
      !verify->count("--format"))
    o.format = "text";

  try {
    if (diagram->parsed())
      return cmd_diagram(o);
    if (normalize->parsed())
      return cmd_normalize(o);
    if (cat->parsed())
      return cmd_catalogue(o);
    if (hom->parsed())
      return cmd_homology(o);
    if (fixed->parsed())
      return cmd_fixed(o);
    if (verify->parsed())
      return cmd_verify(o);
  } catch (PlanTooLarge const &e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return Infeasible;
  } catch (Red2Unavailable const &e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return Infeasible;
  } catch (UnsupportedGeometry const &e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return Infeasible;
  } catch (ParseError const &e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (NotARoot const &e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (ZeroScalar const &e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (UnsupportedType const &e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return CheckFailed;
  }
  return Usage;
}
