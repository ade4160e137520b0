// latsep: command-line front end for the separation library.
//
// Exit codes: 0 condition holds / success, 1 condition fails, 2 usage or
// input error, 3 unsupported (dimension out of range for the operation).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "latsep/catalog.hpp"
#include "latsep/constructions.hpp"
#include "latsep/convexity.hpp"
#include "latsep/error.hpp"
#include "latsep/explorer.hpp"
#include "latsep/instance.hpp"
#include "latsep/serialize.hpp"
#include "svg.hpp"

namespace {

using namespace latsep;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kUnsupported = 3;

struct Globals {
  bool json = false;
};

std::string join(const std::vector<IntPoint>& pts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += (i ? sep : "") + pts[i].to_string();
  }
  return out;
}

std::string side_letters(const std::vector<Side>& colors) {
  std::string out;
  for (auto c : colors) {
    out += c == Side::A ? 'A' : c == Side::B ? 'B' : '.';
  }
  return out;
}

const Partition& need_partition(const Instance& inst) {
  if (!inst.partition) {
    throw InvalidArgument("this command needs a partition: give \"A\" and \"B\" (or \"S\" and \"A\")");
  }
  return *inst.partition;
}

PointSet pick_set(const Instance& inst, const std::string& which) {
  if (which == "S") {
    return inst.set;
  }
  const Partition& p = need_partition(inst);
  return which == "A" ? p.a() : p.b();
}

int verdict_exit(bool holds) { return holds ? kHolds : kFails; }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- printing

void print_flag(const SeparatingFlag& flag) {
  std::cout << "flag with " << flag.functionals.size() << " level(s), residual " << to_string(flag.residual_owner)
            << "\n";
  for (std::size_t i = 0; i < flag.functionals.size(); ++i) {
    std::cout << "  level " << i + 1 << ": " << flag.functionals[i].to_string()
              << "  (> 0: A, < 0: B, = 0: next level)\n";
  }
  std::cout << "nested subspaces, smallest first:\n";
  for (const auto& flat : lex_flag_to_subspace_chain(flag)) {
    std::cout << "  dim " << flat.dimension() << ": anchor " << to_string(flat.anchor);
    if (!flat.basis.empty()) {
      std::cout << " + span{" << join(flat.basis, ", ") << "}";
    }
    std::cout << "\n";
  }
}

void print_blocking(const BlockingFlat& b) {
  std::cout << "no separating flag\n";
  for (std::size_t i = 0; i < b.levels.size(); ++i) {
    std::cout << "  level " << i + 1 << ": " << b.levels[i].to_string() << "\n";
  }
  std::cout << "  blocking flat of dimension " << b.flat.dimension() << " through " << b.flat.anchor << "\n";
  std::cout << "  live A: " << b.live_a << "\n  live B: " << b.live_b << "\n";
  std::cout << "  common point " << to_string(b.common_point) << " of conv(live A) and conv(live B)\n";
  auto weights = [](const PointSet& pts, const RatVector& w) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!w[i].is_zero()) {
        out += (out.empty() ? "" : " + ") + w[i].to_string() + "*" + pts[i].to_string();
      }
    }
    return out;
  };
  std::cout << "    = " << weights(b.live_a, b.weights_a) << "\n";
  std::cout << "    = " << weights(b.live_b, b.weights_b) << "\n";
}

// ---------------------------------------------------------------- commands

int cmd_par(const Globals& g, const std::string& file, int k) {
  const Instance inst = load_instance(file);
  const auto v = check_parallelogram(need_partition(inst), k);
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    std::cout << k << "-parallelogram condition holds\n";
  } else {
    const auto& w = *v.witness;
    std::cout << k << "-parallelogram condition fails at order " << w.order << ":\n  "
              << join(w.a_points, " + ") << "\n  = " << join(w.b_points, " + ") << "\n  = " << w.sum << "\n";
  }
  return verdict_exit(v.holds);
}

int cmd_ray(const Globals& g, const std::string& file) {
  const Instance inst = load_instance(file);
  const auto v = check_ray(need_partition(inst));
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    std::cout << "ray condition holds\n";
  } else {
    const auto& w = *v.witness;
    std::cout << "ray condition fails on the line through " << w.line.base << " with direction "
              << w.line.direction << ":\n  " << join(w.line.trace, " ") << "\n  " << side_letters(w.colors)
              << "\n";
  }
  return verdict_exit(v.holds);
}

int cmd_hole_free(const Globals& g, const std::string& file, const std::string& which) {
  const auto v = is_hole_free(pick_set(load_instance(file), which));
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    std::cout << which << " is hole free\n";
  } else {
    std::cout << which << " has a hole at " << v.witness->missing << "\n";
  }
  return verdict_exit(v.holds);
}

int cmd_integrally_convex(const Globals& g, const std::string& file, const std::string& which) {
  const auto v = is_integrally_convex(pick_set(load_instance(file), which));
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    std::cout << which << " is integrally convex\n";
  } else {
    std::cout << which << " is not integrally convex: vertex " << to_string(v.witness->vertex)
              << " of the cell at " << v.witness->cell << " is not covered by nearby points\n";
  }
  return verdict_exit(v.holds);
}

int cmd_k_convex(const Globals& g, const std::string& file, int k, const std::string& which) {
  const auto v = is_k_convex(pick_set(load_instance(file), which), k);
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    std::cout << which << " is " << k << "-convex\n";
  } else {
    std::cout << which << " is not " << k << "-convex: conv{" << join(v.witness->subset, ", ") << "} contains "
              << v.witness->missing << "\n";
  }
  return verdict_exit(v.holds);
}

int cmd_separate(const Globals& g, const std::string& file) {
  const Instance inst = load_instance(file);
  const auto v = search_flag(need_partition(inst));
  if (g.json) {
    print_json(to_json(v));
  } else if (v.holds) {
    print_flag(std::get<SeparatingFlag>(*v.witness));
  } else {
    print_blocking(std::get<BlockingFlat>(*v.witness));
  }
  return verdict_exit(v.holds);
}

int cmd_verify_flag(const Globals& g, const std::string& file, const std::string& flag_file) {
  const Instance inst = load_instance(file);
  const Partition& p = need_partition(inst);
  const SeparatingFlag flag = load_flag(flag_file);
  const bool ok = verify_flag(p, flag);
  // First misplaced point, for the report.
  std::optional<IntPoint> bad;
  if (!ok) {
    using C = SeparatingFlag::Class;
    for (const auto& x : p.all()) {
      const C c = flag.classify(x);
      const Side claimed = c == C::A ? Side::A : c == C::B ? Side::B : flag.residual_owner;
      if (claimed != p.side_of(x)) {
        bad = x;
        break;
      }
    }
  }
  if (g.json) {
    print_json(Json{{"accepted", ok}, {"misplaced", bad ? to_json(*bad) : Json(nullptr)}});
  } else if (ok) {
    std::cout << "flag accepted\n";
  } else {
    std::cout << "flag rejected: " << *bad << " is in " << to_string(p.side_of(*bad)) << "\n";
  }
  return verdict_exit(ok);
}

int cmd_hull(const Globals& g, const std::string& file, int k, const std::string& which) {
  const PointSet hull = k_convex_hull(pick_set(load_instance(file), which), k);
  if (g.json) {
    print_json(to_json(hull));
  } else {
    for (const auto& p : hull) {
      std::cout << p << "\n";
    }
  }
  return kHolds;
}

int cmd_holes(const Globals& g, const std::string& file, const std::string& which) {
  const auto reports = classify_holes(pick_set(load_instance(file), which));
  if (g.json) {
    Json out = Json::array();
    for (const auto& r : reports) {
      out.push_back(to_json(r));
    }
    print_json(out);
  } else {
    std::cout << "hole\tfirst_k\n";
    for (const auto& r : reports) {
      std::cout << r.hole << "\t" << r.first_k << "\n";
    }
  }
  return kHolds;
}

int cmd_lemma49(const Globals& g, const std::string& file) {
  const Json j = parse_json_text(read_text_file(file), file);
  std::vector<MinimalTriangle> triangles;
  if (j.contains("triangle")) {
    const Json& t = j.at("triangle");
    if (!t.is_array() || t.size() != 3) {
      throw ParseError("triangle: expected three vertices");
    }
    triangles.emplace_back(point_from_json(t[0], 2, "triangle[0]"), point_from_json(t[1], 2, "triangle[1]"),
                           point_from_json(t[2], 2, "triangle[2]"));
  } else {
    const Instance inst = instance_from_json(j);
    triangles = find_minimal_triangles(inst.partition ? inst.partition->a() : inst.set);
  }
  Json out = Json::array();
  int built = 0;
  for (const auto& t : triangles) {
    if (t.interior_points().empty()) {
      continue;
    }
    const EqualSumTriple triple = lemma49_triple(t);
    ++built;
    if (g.json) {
      out.push_back(Json{{"triangle", to_json(std::vector<IntPoint>(t.vertices().begin(), t.vertices().end()))},
                         {"triple", to_json(triple)}});
    } else {
      std::cout << t.a1() << " + " << t.a2() << " + " << t.a3() << " = " << triple.b1 << " + " << triple.b2
                << " + " << triple.b3 << "\n";
    }
  }
  if (g.json) {
    print_json(out);
  } else if (built == 0) {
    std::cout << "no minimal triangle with interior lattice points\n";
  }
  return built > 0 ? kHolds : kFails;
}

int cmd_catalog(const Globals& g, const std::optional<std::string>& pattern) {
  const CatalogReport report = run_catalog(pattern);
  if (g.json) {
    print_json(to_json(report));
  } else {
    for (const auto& r : report.results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.entry << " " << r.check << ": expected "
                << r.expected.dump() << ", got " << r.actual.dump() << "  (" << r.because << ")\n";
      if (!r.passed && r.detail.contains("error")) {
        std::cout << "     error: " << r.detail.at("error").get<std::string>() << "\n";
      }
    }
    std::cout << report.results.size() - report.failures() << "/" << report.results.size() << " claims passed in "
              << report.entries.size() << " entries\n";
  }
  return report.all_passed() ? kHolds : kFails;
}

IntPoint parse_grid(const std::string& text) {
  // "3x3", "4x4", "2x2x2"
  IntPoint dims;
  std::vector<Coord> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, 'x')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw InvalidArgument("--grid: expected sizes like 3x3, got \"" + text + "\"");
    }
  }
  if (parts.empty()) {
    throw InvalidArgument("--grid: expected sizes like 3x3");
  }
  return IntPoint(std::span<const Coord>(parts));
}

void jsonl(const Json& j) { std::cout << j.dump() << "\n" << std::flush; }

struct EquivalenceArgs {
  std::string grid = "3x3";
  std::string family = "integrally-convex";
  std::string left = "P2";
  std::string right = "H";
  std::size_t max_size = 0;
  std::size_t max_violations = 0;
  unsigned jobs = 1;
  std::string checkpoint;
};

int cmd_equivalence(const EquivalenceArgs& a) {
  EquivalenceOptions o;
  o.family = {parse_grid(a.grid), family_from_string(a.family), 1, a.max_size};
  o.left = ConditionSpec::parse(a.left);
  o.right = ConditionSpec::parse(a.right);
  o.jobs = a.jobs;
  o.max_violations = a.max_violations;
  if (!a.checkpoint.empty()) {
    o.checkpoint = a.checkpoint;
  }
  o.on_record = jsonl;
  const auto report = test_equivalence(o);
  return report.violations.empty() ? kHolds : kFails;
}

struct UnseparatedArgs {
  std::string grid = "4x4";
  std::string family = "hole-free";
  std::size_t limit = 3;
};

int cmd_unseparated(const UnseparatedArgs& a) {
  const auto found = find_unseparated({parse_grid(a.grid), family_from_string(a.family)}, a.limit);
  for (const auto& u : found) {
    jsonl(Json{{"type", "unseparated"},
               {"partition", to_json(u.partition)},
               {"common_point", to_json(u.blocking.common_point)},
               {"centroid_witness", u.centroid_witness ? to_json(*u.centroid_witness) : Json(nullptr)}});
  }
  jsonl(Json{{"type", "summary"}, {"found", found.size()}});
  return found.empty() ? kFails : kHolds;
}

struct HuntArgs {
  HuntOptions options;
  std::string set_file;
};

int cmd_conjecture(HuntArgs a) {
  a.options.on_record = jsonl;
  HuntReport report;
  if (!a.set_file.empty()) {
    report = hunt_set(load_instance(a.set_file).set, jsonl);
    jsonl(Json{{"type", "summary"},
               {"integrally_convex", report.integrally_convex},
               {"partitions", report.partitions},
               {"parallelogram_true", report.parallelogram_true},
               {"counterexamples", report.counterexamples.size()}});
  } else {
    report = conjecture_hunt(a.options);
  }
  return report.counterexamples.empty() ? kHolds : kFails;
}

int cmd_plot(const std::string& file, const std::string& flag_file, bool separate, const std::string& output) {
  const Instance inst = load_instance(file);
  std::optional<SeparatingFlag> flag;
  if (!flag_file.empty()) {
    flag = load_flag(flag_file);
  } else if (separate && inst.partition) {
    auto v = search_flag(*inst.partition);
    if (v.holds) {
      flag = std::get<SeparatingFlag>(*v.witness);
    }
  }
  const std::string svg = tools::render_svg(inst.set, inst.partition, flag);
  if (output == "-") {
    std::cout << svg;
  } else {
    std::ofstream out(output);
    if (!out) {
      throw InvalidArgument("cannot write " + output);
    }
    out << svg;
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice separation: parallelogram, ray and flag conditions"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Print results as JSON");

  std::function<int()> run;
  std::string file;
  std::string which = "S";
  int k = 2;

  auto* check = app.add_subcommand("check", "Decide one condition");
  check->require_subcommand(1);
  auto* par = check->add_subcommand("par", "k-parallelogram condition");
  par->add_option("--k", k, "Order k (default 2)")->check(CLI::PositiveNumber);
  par->add_option("file", file, "Instance file")->required();
  par->callback([&] { run = [&] { return cmd_par(g, file, k); }; });

  auto* ray = check->add_subcommand("ray", "Ray condition");
  ray->add_option("file", file, "Instance file")->required();
  ray->callback([&] { run = [&] { return cmd_ray(g, file); }; });

  auto* hole_free = check->add_subcommand("hole-free", "S = conv(S) ∩ Z^d");
  hole_free->add_option("--set", which, "Which set: S, A or B")->check(CLI::IsMember({"S", "A", "B"}));
  hole_free->add_option("file", file, "Instance file")->required();
  hole_free->callback([&] { run = [&] { return cmd_hole_free(g, file, which); }; });

  auto* ic = check->add_subcommand("integrally-convex", "Integral convexity (d <= 3)");
  ic->add_option("--set", which, "Which set: S, A or B")->check(CLI::IsMember({"S", "A", "B"}));
  ic->add_option("file", file, "Instance file")->required();
  ic->callback([&] { run = [&] { return cmd_integrally_convex(g, file, which); }; });

  auto* kc = check->add_subcommand("k-convex", "k-convexity");
  kc->add_option("--k", k, "Order k")->required()->check(CLI::PositiveNumber);
  kc->add_option("--set", which, "Which set: S, A or B")->check(CLI::IsMember({"S", "A", "B"}));
  kc->add_option("file", file, "Instance file")->required();
  kc->callback([&] { run = [&] { return cmd_k_convex(g, file, k, which); }; });

  auto* sep = app.add_subcommand("separate", "Search for a separating flag");
  sep->add_option("file", file, "Instance file")->required();
  sep->callback([&] { run = [&] { return cmd_separate(g, file); }; });

  std::string flag_file;
  auto* vf = app.add_subcommand("verify-flag", "Check a flag against a partition");
  vf->add_option("file", file, "Instance file")->required();
  vf->add_option("--flag", flag_file, "Flag file")->required();
  vf->callback([&] { run = [&] { return cmd_verify_flag(g, file, flag_file); }; });

  auto* hull = app.add_subcommand("hull", "k-convex hull");
  hull->add_option("--k", k, "Order k")->required()->check(CLI::PositiveNumber);
  hull->add_option("--set", which, "Which set: S, A or B")->check(CLI::IsMember({"S", "A", "B"}));
  hull->add_option("file", file, "Instance file")->required();
  hull->callback([&] { run = [&] { return cmd_hull(g, file, k, which); }; });

  auto* holes = app.add_subcommand("holes", "Classify holes by first k-convex hull");
  holes->add_option("--set", which, "Which set: S, A or B")->check(CLI::IsMember({"S", "A", "B"}));
  holes->add_option("file", file, "Instance file")->required();
  holes->callback([&] { run = [&] { return cmd_holes(g, file, which); }; });

  auto* l49 = app.add_subcommand("lemma49", "Equal-sum interior triple of a minimal triangle");
  l49->add_option("file", file, "File with \"triangle\": [a1, a2, a3], or an instance")->required();
  l49->callback([&] { run = [&] { return cmd_lemma49(g, file); }; });

  auto* catalog = app.add_subcommand("catalog", "Fixture catalog");
  catalog->require_subcommand(1);
  std::string pattern;
  auto* catalog_run = catalog->add_subcommand("run", "Re-verify every claim");
  catalog_run->add_option("--id", pattern, "Entry id pattern, '*' as wildcard");
  catalog_run->callback([&] {
    run = [&] { return cmd_catalog(g, pattern.empty() ? std::nullopt : std::optional<std::string>(pattern)); };
  });

  auto* explore = app.add_subcommand("explore", "Search harness (line-delimited JSON output)");
  explore->require_subcommand(1);
  EquivalenceArgs eq;
  auto* equivalence = explore->add_subcommand("equivalence", "Check left <=> right over a family");
  equivalence->add_option("--grid", eq.grid, "Grid size, e.g. 3x3");
  equivalence->add_option("--family", eq.family, "any, integrally-convex, hole-free, 1-convex");
  equivalence->add_option("--left", eq.left, "P<k>, R or H");
  equivalence->add_option("--right", eq.right, "P<k>, R or H");
  equivalence->add_option("--max-size", eq.max_size, "Largest set size (0 = all)");
  equivalence->add_option("--max-violations", eq.max_violations, "Stop once this many are found, at a chunk boundary (0 = never)");
  equivalence->add_option("--jobs", eq.jobs, "Worker threads")->check(CLI::PositiveNumber);
  equivalence->add_option("--checkpoint", eq.checkpoint, "Resume file");
  equivalence->callback([&] { run = [&] { return cmd_equivalence(eq); }; });

  UnseparatedArgs un;
  auto* unseparated = explore->add_subcommand("unseparated", "Find P(k=2)-true, H-false partitions");
  unseparated->add_option("--grid", un.grid, "Grid size, e.g. 4x4");
  unseparated->add_option("--family", un.family, "any, integrally-convex, hole-free, 1-convex");
  unseparated->add_option("--limit", un.limit, "How many to report");
  unseparated->callback([&] { run = [&] { return cmd_unseparated(un); }; });

  HuntArgs hunt;
  auto* conjecture = explore->add_subcommand("conjecture", "Hunt for P3-true, H-false partitions in Z^3");
  conjecture->add_option("--seed", hunt.options.seed, "Random seed");
  conjecture->add_option("--budget", hunt.options.budget, "Polytopes to sample");
  conjecture->add_option("--box-lo", hunt.options.box_lo, "Lower corner of the vertex box");
  conjecture->add_option("--box-hi", hunt.options.box_hi, "Upper corner of the vertex box");
  conjecture->add_option("--span", hunt.options.span, "Side of the sub-box each sample is drawn from");
  conjecture->add_option("--vertices", hunt.options.vertices, "Vertices per polytope");
  conjecture->add_option("--max-points", hunt.options.max_points, "Skip larger samples");
  conjecture->add_option("--set", hunt.set_file, "Test this instance's S instead of sampling");
  conjecture->callback([&] { run = [&] { return cmd_conjecture(hunt); }; });

  std::string output;
  bool with_separation = false;
  auto* plot = app.add_subcommand("plot", "SVG picture of a 2-D instance");
  plot->add_option("file", file, "Instance file")->required();
  plot->add_option("--flag", flag_file, "Overlay this flag");
  plot->add_flag("--separate", with_separation, "Overlay the flag found by search, if any");
  plot->add_option("-o,--output", output, "Output path, '-' for stdout")->required();
  plot->callback([&] { run = [&] { return cmd_plot(file, flag_file, with_separation, output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return run();
  } catch (const UnsupportedDimension& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
