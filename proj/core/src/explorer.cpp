#include "latsep/explorer.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <thread>

#include "latsep/convexity.hpp"
#include "latsep/error.hpp"
#include "latsep/geometry.hpp"
#include "latsep/instance.hpp"

namespace latsep {

std::string to_string(Family family) {
  switch (family) {
    case Family::Any:
      return "any";
    case Family::IntegrallyConvex:
      return "integrally-convex";
    case Family::HoleFree:
      return "hole-free";
    case Family::OneConvex:
      return "1-convex";
  }
  return "any";
}

Family family_from_string(const std::string& name) {
  for (auto f : {Family::Any, Family::IntegrallyConvex, Family::HoleFree, Family::OneConvex}) {
    if (to_string(f) == name) {
      return f;
    }
  }
  throw InvalidArgument("unknown family \"" + name + "\" (any, integrally-convex, hole-free, 1-convex)");
}

bool in_family(const PointSet& set, Family family) {
  switch (family) {
    case Family::Any:
      return true;
    case Family::IntegrallyConvex:
      return is_integrally_convex(set).holds;
    case Family::HoleFree:
      return is_hole_free(set).holds;
    case Family::OneConvex:
      return is_k_convex(set, 1).holds;
  }
  return false;
}

std::vector<IntPoint> grid_points(const IntPoint& dims) {
  IntPoint hi(dims.dim());
  for (std::size_t i = 0; i < dims.dim(); ++i) {
    if (dims[i] < 1) {
      throw InvalidArgument("grid dimensions must be positive");
    }
    hi[i] = dims[i] - 1;
  }
  return box_points(IntPoint(dims.dim()), hi).points();
}

namespace {

constexpr std::size_t kMaxGridPoints = 24;

std::vector<IntPoint> checked_grid(const IntPoint& dims) {
  double count = 1;
  for (auto d : dims) {
    count *= static_cast<double>(d);
  }
  if (count > static_cast<double>(kMaxGridPoints)) {
    throw GridTooLarge("grid has " + std::to_string(static_cast<long long>(count)) +
                       " points; at most 24 can be enumerated");
  }
  return grid_points(dims);
}

}  // namespace

void for_each_in_family(const FamilyQuery& query, const std::function<void(const PointSet&)>& visit) {
  const std::vector<IntPoint> grid = checked_grid(query.dims);
  const std::size_t n = grid.size();
  const std::size_t cap = query.max_size == 0 ? n : query.max_size;
  std::vector<IntPoint> chosen;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < query.min_size || size > cap) {
      continue;
    }
    chosen.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        chosen.push_back(grid[i]);
      }
    }
    PointSet set(query.dims.dim(), chosen);
    if (in_family(set, query.filter)) {
      visit(set);
    }
  }
}

std::vector<PointSet> enumerate_family(const FamilyQuery& query) {
  std::vector<PointSet> out;
  for_each_in_family(query, [&](const PointSet& s) { out.push_back(s); });
  return out;
}

void for_each_bipartition(const PointSet& set, const std::function<void(const Partition&)>& visit) {
  const std::size_t n = set.size();
  if (n < 2) {
    return;
  }
  if (n > 63) {
    throw InvalidArgument("too many points to enumerate bipartitions");
  }
  const std::size_t rest = n - 1;
  std::vector<IntPoint> a;
  std::vector<IntPoint> b;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << rest); ++mask) {
    a.assign(1, set[0]);
    b.clear();
    for (std::size_t i = 0; i < rest; ++i) {
      (mask >> i & 1U ? b : a).push_back(set[i + 1]);
    }
    visit(Partition(PointSet(set.dim(), a), PointSet(set.dim(), b)));
  }
}

// ---------------------------------------------------------------- conditions

ConditionSpec ConditionSpec::parse(const std::string& text) {
  ConditionSpec spec;
  if (text == "H") {
    spec.kind = Kind::Flag;
  } else if (text == "R") {
    spec.kind = Kind::Ray;
  } else if (text.size() >= 2 && text[0] == 'P' &&
             std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    spec.kind = Kind::Parallelogram;
    spec.k = std::stoi(text.substr(1));
    if (spec.k < 1) {
      throw InvalidArgument("parallelogram order must be positive");
    }
  } else {
    throw InvalidArgument("unknown condition \"" + text + "\" (P<k>, R or H)");
  }
  return spec;
}

std::string ConditionSpec::name() const {
  switch (kind) {
    case Kind::Parallelogram:
      return "P" + std::to_string(k);
    case Kind::Ray:
      return "R";
    case Kind::Flag:
      return "H";
  }
  return "H";
}

namespace {

bool holds(const ConditionSpec& spec, const Partition& p) {
  switch (spec.kind) {
    case ConditionSpec::Kind::Parallelogram:
      return check_parallelogram(p, spec.k).holds;
    case ConditionSpec::Kind::Ray:
      return check_ray(p).holds;
    case ConditionSpec::Kind::Flag:
      return search_flag(p).holds;
  }
  return false;
}

}  // namespace

std::pair<bool, Json> ConditionSpec::evaluate(const Partition& partition) const {
  switch (kind) {
    case Kind::Parallelogram: {
      auto v = check_parallelogram(partition, k);
      return {v.holds, to_json(v)};
    }
    case Kind::Ray: {
      auto v = check_ray(partition);
      return {v.holds, to_json(v)};
    }
    case Kind::Flag: {
      auto v = search_flag(partition);
      return {v.holds, to_json(v)};
    }
  }
  return {false, Json()};
}

Json to_json(const Violation& v) {
  return Json{{"partition", to_json(v.partition)},
              {"left", v.left},
              {"right", v.right},
              {"left_witness", v.left_witness},
              {"right_witness", v.right_witness}};
}

// ---------------------------------------------------------------- equivalence

namespace {

struct ChunkResult {
  std::size_t partitions = 0;
  std::vector<Violation> violations;
};

ChunkResult run_chunk(const std::vector<PointSet>& sets, std::size_t begin, std::size_t end,
                      const ConditionSpec& left, const ConditionSpec& right) {
  ChunkResult out;
  for (std::size_t i = begin; i < end; ++i) {
    for_each_bipartition(sets[i], [&](const Partition& p) {
      ++out.partitions;
      if (holds(left, p) != holds(right, p)) {
        auto [l, lw] = left.evaluate(p);
        auto [r, rw] = right.evaluate(p);
        out.violations.push_back({p, l, r, std::move(lw), std::move(rw)});
      }
    });
  }
  return out;
}

std::string fingerprint(const EquivalenceOptions& o) {
  return o.family.dims.to_string() + "/" + to_string(o.family.filter) + "/" +
         std::to_string(o.family.min_size) + "-" + std::to_string(o.family.max_size) + "/" +
         o.left.name() + "<=>" + o.right.name();
}

Violation violation_from_json(const Json& j) {
  const Instance inst = instance_from_json(j.at("partition"));
  if (!inst.partition) {
    throw ParseError("checkpoint: violation without a partition");
  }
  return {*inst.partition, j.at("left").get<bool>(), j.at("right").get<bool>(), j.at("left_witness"),
          j.at("right_witness")};
}

void save_checkpoint(const std::filesystem::path& path, const EquivalenceOptions& o,
                     const EquivalenceReport& r) {
  Json j{{"fingerprint", fingerprint(o)},
         {"cursor", r.cursor},
         {"sets", r.sets},
         {"partitions", r.partitions},
         {"violations", Json::array()}};
  for (const auto& v : r.violations) {
    j["violations"].push_back(to_json(v));
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      throw InvalidArgument("cannot write checkpoint " + tmp.string());
    }
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

bool load_checkpoint(const std::filesystem::path& path, const EquivalenceOptions& o,
                     EquivalenceReport& r) {
  if (!std::filesystem::exists(path)) {
    return false;
  }
  const Json j = parse_json_text(read_text_file(path), path.string());
  if (j.value("fingerprint", std::string()) != fingerprint(o)) {
    throw InvalidArgument("checkpoint " + path.string() + " was written for different options");
  }
  r.cursor = j.at("cursor").get<std::size_t>();
  r.sets = j.at("sets").get<std::size_t>();
  r.partitions = j.at("partitions").get<std::size_t>();
  for (const auto& v : j.at("violations")) {
    r.violations.push_back(violation_from_json(v));
  }
  return true;
}

}  // namespace

EquivalenceReport test_equivalence(const EquivalenceOptions& options) {
  const std::vector<PointSet> sets = enumerate_family(options.family);
  EquivalenceReport report;
  auto emit = [&](const Json& j) {
    if (options.on_record) {
      options.on_record(j);
    }
  };
  if (options.checkpoint && load_checkpoint(*options.checkpoint, options, report)) {
    emit(Json{{"type", "resume"}, {"cursor", report.cursor}});
  }
  const std::size_t chunk = std::max<std::size_t>(options.chunk, 1);
  const unsigned jobs = std::max(options.jobs, 1U);
  const bool capped = options.max_violations > 0;

  while (report.cursor < sets.size()) {
    if (capped && report.violations.size() >= options.max_violations) {
      break;
    }
    // One wave: up to `jobs` consecutive chunks, reduced in order.
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t begin = report.cursor; begin < sets.size() && ranges.size() < jobs; begin += chunk) {
      ranges.emplace_back(begin, std::min(begin + chunk, sets.size()));
    }
    std::vector<ChunkResult> results(ranges.size());
    if (ranges.size() == 1) {
      results[0] = run_chunk(sets, ranges[0].first, ranges[0].second, options.left, options.right);
    } else {
      std::vector<std::thread> workers;
      for (std::size_t w = 0; w < ranges.size(); ++w) {
        workers.emplace_back([&, w] {
          results[w] = run_chunk(sets, ranges[w].first, ranges[w].second, options.left, options.right);
        });
      }
      for (auto& t : workers) {
        t.join();
      }
    }
    for (std::size_t w = 0; w < ranges.size(); ++w) {
      if (capped && report.violations.size() >= options.max_violations) {
        break;
      }
      report.partitions += results[w].partitions;
      report.sets += ranges[w].second - ranges[w].first;
      report.cursor = ranges[w].second;
      // A chunk is merged whole so the cursor never skips a violation.
      for (auto& v : results[w].violations) {
        emit(Json{{"type", "violation"}, {"violation", to_json(v)}});
        report.violations.push_back(std::move(v));
      }
      emit(Json{{"type", "progress"},
                {"cursor", report.cursor},
                {"of", sets.size()},
                {"partitions", report.partitions},
                {"violations", report.violations.size()}});
      if (options.checkpoint) {
        save_checkpoint(*options.checkpoint, options, report);
      }
    }
  }
  report.complete = report.cursor >= sets.size();
  emit(Json{{"type", "summary"},
            {"left", options.left.name()},
            {"right", options.right.name()},
            {"sets", report.sets},
            {"partitions", report.partitions},
            {"violations", report.violations.size()},
            {"complete", report.complete}});
  return report;
}

// ---------------------------------------------------------------- P without H

std::vector<UnseparatedInstance> find_unseparated(const FamilyQuery& query, std::size_t limit) {
  std::vector<UnseparatedInstance> found;
  if (limit == 0) {
    return found;
  }
  for (const auto& s : enumerate_family(query)) {
    for_each_bipartition(s, [&](const Partition& p) {
      if (found.size() >= limit || !check_parallelogram(p, 2).holds) {
        return;
      }
      auto h = search_flag(p);
      if (h.holds) {
        return;
      }
      auto p3 = check_parallelogram(p, 3);
      found.push_back({p, std::get<BlockingFlat>(*h.witness), p3.witness});
    });
    if (found.size() >= limit) {
      break;
    }
  }
  return found;
}

// ---------------------------------------------------------------- conjecture hunt

namespace {

void hunt_partitions(const PointSet& set, HuntReport& report, const std::function<void(const Json&)>& emit) {
  const int k = static_cast<int>(set.dim());
  for_each_bipartition(set, [&](const Partition& p) {
    ++report.partitions;
    if (!check_parallelogram(p, k).holds) {
      return;
    }
    ++report.parallelogram_true;
    auto h = search_flag(p);
    if (h.holds) {
      return;
    }
    Violation v{p, true, false, to_json(Verdict<ParallelogramWitness>::pass()), to_json(h)};
    if (emit) {
      emit(Json{{"type", "counterexample"}, {"violation", to_json(v)}});
    }
    report.counterexamples.push_back(std::move(v));
  });
}

}  // namespace

HuntReport hunt_set(const PointSet& set, const std::function<void(const Json&)>& on_record) {
  HuntReport report;
  report.sampled = 1;
  if (!is_integrally_convex(set).holds) {
    if (on_record) {
      on_record(Json{{"type", "excluded"}, {"S", to_json(set)}, {"reason", "not integrally convex"}});
    }
    return report;
  }
  report.integrally_convex = 1;
  hunt_partitions(set, report, on_record);
  return report;
}

HuntReport conjecture_hunt(const HuntOptions& options) {
  if (options.dim != 3) {
    throw UnsupportedDimension("the conjecture hunt runs in dimension 3");
  }
  if (options.box_lo > options.box_hi || options.vertices == 0) {
    throw InvalidArgument("empty sampling box or no vertices");
  }
  HuntReport report;
  std::mt19937_64 rng(options.seed);
  const Coord span = std::clamp<Coord>(options.span, 0, options.box_hi - options.box_lo);
  std::uniform_int_distribution<Coord> corner(options.box_lo, options.box_hi - span);
  std::uniform_int_distribution<Coord> offset(0, span);
  auto emit = [&](const Json& j) {
    if (options.on_record) {
      options.on_record(j);
    }
  };
  for (std::size_t sample = 0; sample < options.budget; ++sample) {
    IntPoint base(options.dim);
    for (std::size_t i = 0; i < options.dim; ++i) {
      base[i] = corner(rng);
    }
    std::vector<IntPoint> vertices;
    for (std::size_t v = 0; v < options.vertices; ++v) {
      IntPoint p = base;
      for (std::size_t i = 0; i < options.dim; ++i) {
        p[i] += offset(rng);
      }
      vertices.push_back(p);
    }
    ++report.sampled;
    const PointSet set = lattice_points_in_conv(PointSet(options.dim, vertices));
    const bool small = set.size() >= 2 && set.size() <= options.max_points;
    const bool convex = small && is_integrally_convex(set).holds;
    emit(Json{{"type", "sample"}, {"index", sample}, {"points", set.size()}, {"integrally_convex", convex}});
    if (!convex) {
      continue;
    }
    ++report.integrally_convex;
    hunt_partitions(set, report, emit);
  }
  emit(Json{{"type", "summary"},
            {"sampled", report.sampled},
            {"integrally_convex", report.integrally_convex},
            {"partitions", report.partitions},
            {"parallelogram_true", report.parallelogram_true},
            {"counterexamples", report.counterexamples.size()}});
  return report;
}

}  // namespace latsep
