#include "latsep/catalog.hpp"

#include <chrono>
#include <map>
#include <string_view>

#include "latsep/convexity.hpp"
#include "latsep/error.hpp"
#include "latsep/geometry.hpp"
#include "latsep/windows.hpp"

namespace latsep {

namespace detail {
extern const std::string_view kCatalogText;
}  // namespace detail

bool CatalogReport::all_passed() const { return failures() == 0; }

std::size_t CatalogReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : results) {
    n += r.passed ? 0 : 1;
  }
  return n;
}

const Json& builtin_catalog_json() {
  static const Json catalog = parse_json_text(detail::kCatalogText, "data/catalog.json");
  return catalog;
}

std::vector<CatalogEntry> load_catalog(const Json& catalog) {
  if (!catalog.is_object() || !catalog.contains("entries") || !catalog.at("entries").is_array()) {
    throw ParseError("catalog: expected {\"entries\": [...]}");
  }
  std::vector<CatalogEntry> out;
  const Json& entries = catalog.at("entries");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& e = entries[i];
    const std::string field = "entries[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("id") || !e.at("id").is_string()) {
      throw ParseError(field + ".id: expected a string");
    }
    if (!e.contains("instance") || !e.contains("claims") || !e.at("claims").is_array()) {
      throw ParseError(field + ": needs \"instance\" and a \"claims\" array");
    }
    CatalogEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.title = e.value("title", std::string());
    entry.derived = e.value("derived", false);
    entry.instance = e.at("instance");
    for (std::size_t c = 0; c < e.at("claims").size(); ++c) {
      const Json& claim = e.at("claims")[c];
      const std::string cf = field + ".claims[" + std::to_string(c) + "]";
      if (!claim.is_object() || !claim.contains("check") || !claim.at("check").is_string() ||
          !claim.contains("expect")) {
        throw ParseError(cf + ": needs \"check\" and \"expect\"");
      }
      if (!claim.contains("because") || !claim.at("because").is_string() ||
          claim.at("because").get<std::string>().empty()) {
        throw ParseError(cf + ".because: every claim states its reason");
      }
      entry.claims.push_back(claim);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

bool id_matches(const std::string& pattern, const std::string& id) {
  // Iterative glob with '*' only.
  std::size_t p = 0;
  std::size_t s = 0;
  std::size_t star = std::string::npos;
  std::size_t mark = 0;
  while (s < id.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = s;
    } else if (p < pattern.size() && pattern[p] == id[s]) {
      ++p;
      ++s;
    } else if (star != std::string::npos) {
      p = star + 1;
      s = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') {
    ++p;
  }
  return p == pattern.size();
}

// ---------------------------------------------------------------- claims

namespace {

// Per-entry memo for the expensive k-convex hulls and hole classification.
struct Context {
  const Instance& instance;
  std::map<std::string, PointSet> hulls;
  std::map<std::string, std::vector<HoleReport>> holes;

  PointSet set(const Json& claim, const char* key = "set") const {
    return set_from_json(claim.value(key, Json("S")), instance, key);
  }

  const PointSet& hull(const Json& expr, const PointSet& base, int k) {
    const std::string key = expr.dump() + "#" + std::to_string(k);
    auto it = hulls.find(key);
    if (it == hulls.end()) {
      it = hulls.emplace(key, k_convex_hull(base, k)).first;
    }
    return it->second;
  }

  const std::vector<HoleReport>& hole_reports(const Json& expr, const PointSet& base) {
    auto it = holes.find(expr.dump());
    if (it == holes.end()) {
      it = holes.emplace(expr.dump(), classify_holes(base)).first;
    }
    return it->second;
  }

  const Partition& partition() const {
    if (!instance.partition) {
      throw InvalidArgument("claim needs a partition (A and B)");
    }
    return *instance.partition;
  }
};

int int_param(const Json& claim, const char* key) {
  if (!claim.contains(key) || !claim.at(key).is_number_integer()) {
    throw ParseError(std::string(key) + ": expected an integer");
  }
  return claim.at(key).get<int>();
}

std::vector<IntPoint> points_param(const Json& j, std::size_t dim, const std::string& field) {
  if (!j.is_array()) {
    throw ParseError(field + ": expected a list of points");
  }
  std::vector<IntPoint> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(point_from_json(j[i], dim, field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

IntPoint sum_of(const std::vector<IntPoint>& pts, std::size_t dim) {
  IntPoint s(dim);
  for (const auto& p : pts) {
    s += p;
  }
  return s;
}

// Replays a parallelogram witness against the partition.
bool parallelogram_witness_ok(const Partition& p, const ParallelogramWitness& w, int k) {
  if (w.order < 1 || w.order > k || static_cast<int>(w.a_points.size()) != w.order ||
      static_cast<int>(w.b_points.size()) != w.order) {
    return false;
  }
  for (const auto& a : w.a_points) {
    if (!p.a().contains(a)) {
      return false;
    }
  }
  for (const auto& b : w.b_points) {
    if (!p.b().contains(b)) {
      return false;
    }
  }
  const IntPoint sa = sum_of(w.a_points, p.dim());
  return sa == sum_of(w.b_points, p.dim()) && sa == w.sum;
}

bool ray_witness_ok(const Partition& p, const RayWitness& w) {
  if (w.line.trace.size() != w.colors.size() || w.line.direction.is_zero()) {
    return false;
  }
  int changes = 0;
  for (std::size_t i = 0; i < w.colors.size(); ++i) {
    if (p.side_of(w.line.trace[i]) != w.colors[i] || w.colors[i] == Side::Empty) {
      return false;
    }
    if (i > 0 && w.colors[i] != w.colors[i - 1]) {
      ++changes;
    }
  }
  return changes >= 2;
}

SeparatingFlag claimed_flag(const Json& claim, const Instance& inst) {
  if (claim.contains("flag")) {
    return flag_from_json(claim.at("flag"));
  }
  const std::string name = claim.value("named", std::string());
  if (name == "lex") {
    return lex_half_plane_flag();
  }
  if (name == "sqrt2-convergent") {
    const auto [lo, hi] = inst.set.bounding_box();
    Coord radius = 0;
    for (std::size_t i = 0; i < lo.dim(); ++i) {
      radius = std::max({radius, -lo[i], hi[i]});
    }
    return sqrt2_convergent_flag(radius);
  }
  throw ParseError("verify_flag: give \"flag\" or \"named\": \"lex\" | \"sqrt2-convergent\"");
}

void evaluate(Context& ctx, const Json& claim, ClaimResult& r) {
  const std::string& check = r.check;
  const std::size_t dim = ctx.instance.dim;

  if (check == "lattice_points") {
    const PointSet pts = lattice_points_in_conv(ctx.set(claim));
    r.actual = to_json(pts);
    r.passed = pts == PointSet(dim, points_param(claim.at("expect"), dim, "expect"));
  } else if (check == "size") {
    const PointSet s = ctx.set(claim);
    r.actual = s.size();
    r.passed = r.actual == claim.at("expect");
  } else if (check == "sets_equal") {
    const bool eq = ctx.set(claim, "left") == ctx.set(claim, "right");
    r.actual = eq;
    r.passed = r.actual == claim.at("expect");
  } else if (check == "parallelogram") {
    const int k = int_param(claim, "k");
    const auto v = check_parallelogram(ctx.partition(), k);
    r.actual = v.holds;
    r.detail = to_json(v);
    r.passed = r.actual == claim.at("expect");
    if (!v.holds) {
      r.passed = r.passed && parallelogram_witness_ok(ctx.partition(), *v.witness, k);
      if (claim.contains("witness_order")) {
        r.passed = r.passed && v.witness->order == claim.at("witness_order").get<int>();
      }
    }
  } else if (check == "parallelogram_identity") {
    const auto a = points_param(claim.at("a"), dim, "a");
    const auto b = points_param(claim.at("b"), dim, "b");
    ParallelogramWitness w{static_cast<int>(a.size()), a, b, sum_of(a, dim)};
    const bool ok = parallelogram_witness_ok(ctx.partition(), w, w.order);
    r.actual = ok;
    r.detail = to_json(w);
    r.passed = r.actual == claim.at("expect");
  } else if (check == "convex_combination") {
    const auto pts = points_param(claim.at("points"), dim, "points");
    const Json& weights = claim.at("weights");
    if (!weights.is_array() || weights.size() != pts.size()) {
      throw ParseError("weights: one per point");
    }
    RatVector x(dim, Rational(0));
    Rational total;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Rational w = rational_from_json(weights[i], "weights");
      if (w.sign() < 0) {
        throw ParseError("weights: must be nonnegative");
      }
      total += w;
      for (std::size_t c = 0; c < dim; ++c) {
        x[c] += w * Rational(pts[i][c]);
      }
    }
    r.actual = to_json(x);
    r.passed = total == Rational(1) &&
               x == to_rational(point_from_json(claim.at("expect"), dim, "expect"));
  } else if (check == "ray") {
    const auto v = check_ray(ctx.partition());
    r.actual = v.holds;
    r.detail = to_json(v);
    r.passed = r.actual == claim.at("expect") && (v.holds || ray_witness_ok(ctx.partition(), *v.witness));
  } else if (check == "separation") {
    const auto v = search_flag(ctx.partition());
    r.actual = v.holds;
    r.detail = to_json(v);
    bool certified = false;
    if (v.holds) {
      certified = verify_flag(ctx.partition(), std::get<SeparatingFlag>(*v.witness));
    } else {
      certified = verify_blocking(ctx.partition(), std::get<BlockingFlat>(*v.witness));
    }
    r.passed = r.actual == claim.at("expect") && certified;
  } else if (check == "verify_flag") {
    const SeparatingFlag flag = claimed_flag(claim, ctx.instance);
    r.detail = to_json(flag);
    r.actual = verify_flag(ctx.partition(), flag);
    r.passed = r.actual == claim.at("expect");
  } else if (check == "hole_free") {
    const auto v = is_hole_free(ctx.set(claim));
    r.actual = v.holds;
    r.detail = to_json(v);
    r.passed = r.actual == claim.at("expect");
  } else if (check == "integrally_convex") {
    const auto v = is_integrally_convex(ctx.set(claim));
    r.actual = v.holds;
    r.detail = to_json(v);
    r.passed = r.actual == claim.at("expect");
  } else if (check == "k_convex") {
    const auto v = is_k_convex(ctx.set(claim), int_param(claim, "k"));
    r.actual = v.holds;
    r.detail = to_json(v);
    r.passed = r.actual == claim.at("expect");
  } else if (check == "meets_hull") {
    // Whether any point of `points` lies in conv(`hull`).
    const PointSet pts = ctx.set(claim, "points");
    const PointSet hull = ctx.set(claim, "hull");
    Json inside = Json::array();
    for (const auto& p : pts) {
      if (point_in_conv(p, hull)) {
        inside.push_back(to_json(p));
      }
    }
    r.actual = !inside.empty();
    r.detail = Json{{"inside", inside}};
    r.passed = r.actual == claim.at("expect");
  } else if (check == "hull_difference") {
    const Json expr = claim.value("set", Json("S"));
    const PointSet base = ctx.set(claim);
    const PointSet diff =
        ctx.hull(expr, base, int_param(claim, "k")).set_difference(ctx.hull(expr, base, int_param(claim, "minus_k")));
    r.actual = to_json(diff);
    r.passed = diff == PointSet(dim, points_param(claim.at("expect"), dim, "expect"));
  } else if (check == "hull_contains") {
    const Json expr = claim.value("set", Json("S"));
    const PointSet& h = ctx.hull(expr, ctx.set(claim), int_param(claim, "k"));
    r.actual = h.contains(point_from_json(claim.at("point"), dim, "point"));
    r.passed = r.actual == claim.at("expect");
  } else if (check == "hole_class") {
    const Json expr = claim.value("set", Json("S"));
    const IntPoint hole = point_from_json(claim.at("point"), dim, "point");
    r.actual = nullptr;
    for (const auto& report : ctx.hole_reports(expr, ctx.set(claim))) {
      if (report.hole == hole) {
        r.actual = report.first_k;
      }
    }
    r.passed = r.actual == claim.at("expect");
  } else {
    throw ParseError("unknown check \"" + check + "\"");
  }
}

ClaimResult run_in_context(const std::string& entry, Context& ctx, const Json& claim) {
  ClaimResult r;
  r.entry = entry;
  r.check = claim.value("check", std::string());
  r.expected = claim.value("expect", Json());
  r.because = claim.value("because", std::string());
  try {
    evaluate(ctx, claim, r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.actual = nullptr;
    r.detail = Json{{"error", e.what()}};
  }
  return r;
}

}  // namespace

ClaimResult run_claim(const std::string& entry, const Instance& instance, const Json& claim) {
  Context ctx{instance, {}, {}};
  return run_in_context(entry, ctx, claim);
}

CatalogReport run_catalog(const std::vector<CatalogEntry>& entries, const std::optional<std::string>& pattern) {
  const auto start = std::chrono::steady_clock::now();
  CatalogReport report;
  for (const auto& e : entries) {
    if (pattern && !id_matches(*pattern, e.id)) {
      continue;
    }
    report.entries.push_back(e.id);
    std::optional<Instance> instance;
    try {
      instance = instance_from_json(e.instance);
    } catch (const std::exception& err) {
      ClaimResult r;
      r.entry = e.id;
      r.check = "instance";
      r.detail = Json{{"error", err.what()}};
      r.because = "the fixture must parse";
      report.results.push_back(std::move(r));
      continue;
    }
    Context ctx{*instance, {}, {}};
    for (const auto& claim : e.claims) {
      report.results.push_back(run_in_context(e.id, ctx, claim));
    }
  }
  if (report.entries.empty()) {
    throw UnknownEntry("no catalog entry matches \"" + pattern.value_or("") + "\"");
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

CatalogReport run_catalog(const std::optional<std::string>& pattern) {
  static const std::vector<CatalogEntry> entries = load_catalog(builtin_catalog_json());
  return run_catalog(entries, pattern);
}

Json to_json(const ClaimResult& r) {
  return Json{{"entry", r.entry},     {"check", r.check},   {"expected", r.expected}, {"actual", r.actual},
              {"passed", r.passed},   {"because", r.because}, {"detail", r.detail}};
}

Json to_json(const CatalogReport& report) {
  Json out{{"entries", report.entries}, {"claims", report.results.size()}, {"failures", report.failures()},
           {"seconds", report.seconds}, {"results", Json::array()}};
  for (const auto& r : report.results) {
    out["results"].push_back(to_json(r));
  }
  return out;
}

}  // namespace latsep
