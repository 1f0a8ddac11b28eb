#pragma once

// Branch-and-bound certification of global lower bounds f > threshold over a
// planar domain, using interval enclosures of f on boxes.
//
// A box is retained once its enclosure lower bound exceeds the threshold. A box
// whose enclosure is inconclusive is bisected along its wider side; if the
// midpoint of such a box lies in the domain and f there is provably <= the
// threshold, the run stops with a Failed certificate carrying that witness.
// Boxes that reach max_depth without a decision make the run Inconclusive.

#include "interval.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace lagtori {

enum class Region { Outside, Inside, Straddle };

/// Planar domain: a bounding box plus an optional shape predicate and contractor.
struct Domain {
  std::string name;
  Box2 bounds;
  // Classifies a box against the domain; defaults to Inside.
  std::function<Region(const Box2&)> classify;
  // Shrinks a straddling box towards the domain; must keep every domain point.
  std::function<std::optional<Box2>(const Box2&)> contract;
  // Point membership; defaults to bounds.contains.
  std::function<bool(double, double)> contains_point;

  Region region_of(const Box2& b) const { return classify ? classify(b) : Region::Inside; }
  bool has_point(double px, double py) const {
    return contains_point ? contains_point(px, py) : bounds.contains(px, py);
  }
};

using BoxEvaluator = std::function<Interval(const Box2&)>;

enum class Status { Proved, Failed, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Proved: return "Proved";
    case Status::Failed: return "Failed";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline Status status_from_string(const std::string& s) {
  if (s == "Proved") return Status::Proved;
  if (s == "Failed") return Status::Failed;
  if (s == "Inconclusive") return Status::Inconclusive;
  throw std::invalid_argument("unknown certificate status " + s);
}

struct CertifyOptions {
  double threshold = 0.0;
  double epsilon = 1e-4;  // recorded only; the caller builds the inset domain
  int max_depth = 40;
  std::size_t max_boxes = 10'000'000;
  unsigned workers = 1;
  int tiles_per_side = 8;  // power of two
};

struct Witness {
  double x = 0.0;
  double y = 0.0;
  double value_upper = 0.0;  // upper bound of f at (x, y)
};

struct Certificate {
  std::string target;
  std::string domain;
  double threshold = 0.0;
  double epsilon = 0.0;
  Status status = Status::Inconclusive;
  std::size_t boxes_examined = 0;
  int max_depth = 0;         // deepest level reached
  int depth_limit = 0;
  double min_lower_bound = std::numeric_limits<double>::infinity();
  std::vector<Box2> retained;
  std::optional<Witness> witness;
  std::optional<Box2> deepest_failing;
  std::vector<std::string> notes;

  /// FNV-1a over the bit patterns of the retained box endpoints, in order.
  std::string digest() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    for (const auto& b : retained) {
      mix(b.x.lo);
      mix(b.x.hi);
      mix(b.y.lo);
      mix(b.y.hi);
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }
};

namespace detail {

struct TileOutcome {
  std::vector<Box2> retained;
  std::size_t examined = 0;
  int max_depth = 0;
  double min_lower = std::numeric_limits<double>::infinity();
  bool inconclusive = false;
  std::optional<Box2> deepest_failing;
  int deepest_failing_depth = -1;
  std::optional<Witness> witness;
};

inline void run_tile(const Box2& tile, int tile_depth, const BoxEvaluator& f, const Domain& dom,
                     const CertifyOptions& opt, std::atomic<bool>& stop,
                     std::atomic<std::size_t>& global_examined, TileOutcome& out) {
  struct Item {
    Box2 box;
    int depth;
  };
  std::vector<Item> stack{{tile, tile_depth}};
  while (!stack.empty()) {
    if (stop.load(std::memory_order_relaxed)) return;
    auto [box, depth] = stack.back();
    stack.pop_back();
    ++out.examined;
    if (global_examined.fetch_add(1, std::memory_order_relaxed) >= opt.max_boxes) {
      out.inconclusive = true;
      return;
    }
    out.max_depth = std::max(out.max_depth, depth);

    const Region region = dom.region_of(box);
    if (region == Region::Outside) continue;
    if (region == Region::Straddle && dom.contract) {
      auto c = dom.contract(box);
      if (!c) continue;
      box = *c;
    }

    std::optional<Interval> enclosure;
    try {
      enclosure = f(box);
    } catch (const IntervalDomainError&) {
    }
    if (enclosure && enclosure->lo > opt.threshold) {
      out.retained.push_back(box);
      out.min_lower = std::min(out.min_lower, enclosure->lo);
      continue;
    }

    const double cx = box.x.mid();
    const double cy = box.y.mid();
    if (dom.has_point(cx, cy)) {
      try {
        const Interval pv = f(Box2{Interval(cx), Interval(cy)});
        if (pv.hi <= opt.threshold) {
          out.witness = Witness{cx, cy, pv.hi};
          stop.store(true);
          return;
        }
      } catch (const IntervalDomainError&) {
      }
    }

    if (depth >= opt.max_depth) {
      out.inconclusive = true;
      if (depth > out.deepest_failing_depth) {
        out.deepest_failing = box;
        out.deepest_failing_depth = depth;
      }
      continue;
    }
    auto [left, right] = box.split();
    stack.push_back({right, depth + 1});
    stack.push_back({left, depth + 1});
  }
}

}  // namespace detail

/// Certifies f > options.threshold on the domain. Tiles of the bounding box are
/// distributed over options.workers threads; results are merged in tile order,
/// so the retained box list does not depend on scheduling.
inline Certificate certify_lower_bound(std::string target, const BoxEvaluator& f,
                                       const Domain& dom, const CertifyOptions& opt) {
  const int tiles = std::max(1, opt.tiles_per_side);
  const int tile_depth = 2 * std::countr_zero(static_cast<unsigned>(tiles));
  std::vector<Box2> tile_boxes;
  tile_boxes.reserve(static_cast<std::size_t>(tiles) * tiles);
  const Box2& B = dom.bounds;
  auto cut = [](const Interval& iv, int i, int n) {
    const double a = i == 0 ? iv.lo : iv.lo + (iv.hi - iv.lo) * i / n;
    const double b = i == n - 1 ? iv.hi : iv.lo + (iv.hi - iv.lo) * (i + 1) / n;
    return Interval(a, b);
  };
  for (int i = 0; i < tiles; ++i) {
    for (int j = 0; j < tiles; ++j) {
      // Degenerate y (1D problems) keeps a single row of tiles.
      if (B.y.is_point() && j > 0) continue;
      tile_boxes.push_back(Box2{cut(B.x, i, tiles), B.y.is_point() ? B.y : cut(B.y, j, tiles)});
    }
  }

  std::vector<detail::TileOutcome> outcomes(tile_boxes.size());
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> examined{0};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < tile_boxes.size(); t = next.fetch_add(1)) {
      detail::run_tile(tile_boxes[t], tile_depth, f, dom, opt, stop, examined, outcomes[t]);
    }
  };
  const unsigned nworkers = std::max(1U, std::min<unsigned>(opt.workers, tile_boxes.size()));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Certificate cert;
  cert.target = std::move(target);
  cert.domain = dom.name;
  cert.threshold = opt.threshold;
  cert.epsilon = opt.epsilon;
  cert.depth_limit = opt.max_depth;
  bool inconclusive = false;
  int deepest = -1;
  for (auto& o : outcomes) {
    cert.boxes_examined += o.examined;
    cert.max_depth = std::max(cert.max_depth, o.max_depth);
    cert.min_lower_bound = std::min(cert.min_lower_bound, o.min_lower);
    inconclusive = inconclusive || o.inconclusive;
    if (o.deepest_failing && o.deepest_failing_depth > deepest) {
      cert.deepest_failing = o.deepest_failing;
      deepest = o.deepest_failing_depth;
    }
    if (o.witness && !cert.witness) cert.witness = o.witness;
    cert.retained.insert(cert.retained.end(), o.retained.begin(), o.retained.end());
  }
  if (cert.witness) {
    cert.status = Status::Failed;
  } else if (inconclusive || examined.load() > opt.max_boxes) {
    cert.status = Status::Inconclusive;
  } else {
    cert.status = Status::Proved;
  }
  return cert;
}

/// Re-evaluates every retained box; true iff each enclosure still clears the threshold.
inline bool replay(const Certificate& cert, const BoxEvaluator& f) {
  if (cert.status != Status::Proved) return false;
  for (const auto& b : cert.retained) {
    try {
      if (!(f(b).lo > cert.threshold)) return false;
    } catch (const IntervalDomainError&) {
      return false;
    }
  }
  return true;
}

// ---- JSON -----------------------------------------------------------------

inline nlohmann::json box_to_json(const Box2& b) {
  return nlohmann::json::array({b.x.lo, b.x.hi, b.y.lo, b.y.hi});
}

inline Box2 box_from_json(const nlohmann::json& j) {
  return Box2{Interval(j.at(0).get<double>(), j.at(1).get<double>()),
              Interval(j.at(2).get<double>(), j.at(3).get<double>())};
}

inline nlohmann::json to_json(const Certificate& c, bool include_boxes = true) {
  nlohmann::json j{
      {"target", c.target},
      {"domain", c.domain},
      {"threshold", c.threshold},
      {"epsilon", c.epsilon},
      {"status", to_string(c.status)},
      {"boxes_examined", c.boxes_examined},
      {"max_depth", c.max_depth},
      {"depth_limit", c.depth_limit},
      {"retained_count", c.retained.size()},
      {"box_digest", c.digest()},
      {"notes", c.notes},
  };
  if (std::isfinite(c.min_lower_bound)) j["min_lower_bound"] = c.min_lower_bound;
  if (c.witness) {
    j["witness"] = {{"x", c.witness->x}, {"y", c.witness->y}, {"value_upper", c.witness->value_upper}};
  }
  if (c.deepest_failing) j["deepest_failing_box"] = box_to_json(*c.deepest_failing);
  if (include_boxes) {
    auto& arr = j["retained_boxes"] = nlohmann::json::array();
    for (const auto& b : c.retained) arr.push_back(box_to_json(b));
  }
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.target = j.at("target").get<std::string>();
  c.domain = j.at("domain").get<std::string>();
  c.threshold = j.at("threshold").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.status = status_from_string(j.at("status").get<std::string>());
  c.boxes_examined = j.at("boxes_examined").get<std::size_t>();
  c.max_depth = j.at("max_depth").get<int>();
  c.depth_limit = j.value("depth_limit", 0);
  c.notes = j.value("notes", std::vector<std::string>{});
  if (j.contains("min_lower_bound")) c.min_lower_bound = j["min_lower_bound"].get<double>();
  if (j.contains("witness")) {
    const auto& w = j["witness"];
    c.witness = Witness{w.at("x").get<double>(), w.at("y").get<double>(),
                        w.at("value_upper").get<double>()};
  }
  if (j.contains("deepest_failing_box")) c.deepest_failing = box_from_json(j["deepest_failing_box"]);
  if (j.contains("retained_boxes")) {
    for (const auto& b : j["retained_boxes"]) c.retained.push_back(box_from_json(b));
  }
  return c;
}

}  // namespace lagtori
