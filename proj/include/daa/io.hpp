#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "daa/auction.hpp"
#include "daa/errors.hpp"
#include "daa/network.hpp"
#include "daa/rational.hpp"
#include "daa/setcover.hpp"
#include "daa/spectrum.hpp"

namespace daa {

using ProblemPayload = std::variant<SpectrumInstance, NetworkInstance, SetCoverInstance>;

inline std::string problem_name(const ProblemPayload& p) {
  switch (p.index()) {
    case 0: return "spectrum";
    case 1: return "network";
    default: return "setcover";
  }
}

inline Orientation problem_orientation(const ProblemPayload& p) {
  return std::holds_alternative<SetCoverInstance>(p) ? Orientation::selling : Orientation::procurement;
}

inline std::size_t bidder_count(const ProblemPayload& p) {
  return std::visit([](const auto& inst) { return inst.size(); }, p);
}

/// One auction instance: the problem payload, bid spaces, true values and
/// optionally an explicit bid profile (truthful bids are used otherwise).
struct InstanceFile {
  ProblemPayload payload;
  BidSpace bid_spaces;
  std::vector<Rational> values;
  std::optional<std::vector<Rational>> bids;

  std::string problem() const { return problem_name(payload); }
  Orientation orientation() const { return problem_orientation(payload); }

  std::vector<Rational> effective_bids() const {
    if (bids) return *bids;
    return bid_spaces.truthful_profile(values, orientation());
  }

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

using nlohmann::json;

inline void expect_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto k : required) known = known || it.key() == k;
    for (auto k : optional) known = known || it.key() == k;
    if (!known) throw ParseError(path + ": unknown field '" + it.key() + "'");
  }
  for (auto k : required) {
    if (!obj.contains(k)) throw ParseError(path + ": missing field '" + std::string(k) + "'");
  }
}

inline Rational rational_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a decimal string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::size_t count_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ParseError(path + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

inline std::vector<Rational> rationals_at(const json& j, const std::string& path) {
  std::vector<Rational> out;
  const auto& arr = array_at(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(rational_at(arr[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::size_t> counts_at(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  const auto& arr = array_at(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(count_at(arr[i], path + "/" + std::to_string(i)));
  return out;
}

inline json rationals_json(std::span<const Rational> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(to_string(v));
  return arr;
}

inline SpectrumInstance parse_spectrum(const json& j, const std::string& path) {
  expect_keys(j, path, {"channels", "geometry"});
  std::size_t k = count_at(j["channels"], path + "/channels");
  const json& geo = j["geometry"];
  const std::string gpath = path + "/geometry";
  if (!geo.is_object() || !geo.contains("kind") || !geo["kind"].is_string()) {
    throw ParseError(gpath + ": expected an object with a string 'kind'");
  }
  const std::string kind = geo["kind"].get<std::string>();
  GeometrySpec spec;
  if (kind == "interval") {
    expect_keys(geo, gpath, {"kind", "intervals"});
    IntervalGeometry g;
    const auto& arr = array_at(geo["intervals"], gpath + "/intervals");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = gpath + "/intervals/" + std::to_string(i);
      expect_keys(arr[i], p, {"left", "length"});
      g.intervals.push_back({rational_at(arr[i]["left"], p + "/left"), rational_at(arr[i]["length"], p + "/length")});
    }
    spec = std::move(g);
  } else if (kind == "disk") {
    expect_keys(geo, gpath, {"kind", "disks"});
    DiskGeometry g;
    const auto& arr = array_at(geo["disks"], gpath + "/disks");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = gpath + "/disks/" + std::to_string(i);
      expect_keys(arr[i], p, {"x", "y", "radius"});
      g.disks.push_back({rational_at(arr[i]["x"], p + "/x"), rational_at(arr[i]["y"], p + "/y"),
                         rational_at(arr[i]["radius"], p + "/radius")});
    }
    spec = std::move(g);
  } else if (kind == "explicit") {
    expect_keys(geo, gpath, {"kind", "vertices", "degree_bound", "edges"});
    ExplicitGeometry g;
    g.graph = Graph(count_at(geo["vertices"], gpath + "/vertices"));
    g.degree_bound = count_at(geo["degree_bound"], gpath + "/degree_bound");
    const auto& arr = array_at(geo["edges"], gpath + "/edges");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      auto ends = counts_at(arr[i], gpath + "/edges/" + std::to_string(i));
      if (ends.size() != 2) throw ParseError(gpath + "/edges/" + std::to_string(i) + ": expected [u, v]");
      g.graph.add_edge(ends[0], ends[1]);
    }
    spec = std::move(g);
  } else {
    throw ParseError(gpath + "/kind: unknown geometry '" + kind + "'");
  }
  return SpectrumInstance(std::move(spec), k);
}

inline NetworkInstance parse_network(const json& j, const std::string& path) {
  expect_keys(j, path, {"mode", "vertices", "edges", "firms"});
  if (!j["mode"].is_string()) throw ParseError(path + "/mode: expected a string");
  const std::string mode_name = j["mode"].get<std::string>();
  RoutingMode mode;
  if (mode_name == "unicast") mode = RoutingMode::unicast;
  else if (mode_name == "multicast") mode = RoutingMode::multicast;
  else throw ParseError(path + "/mode: unknown routing mode '" + mode_name + "'");
  std::size_t n = count_at(j["vertices"], path + "/vertices");
  std::vector<NetworkEdge> edges;
  const auto& earr = array_at(j["edges"], path + "/edges");
  for (std::size_t i = 0; i < earr.size(); ++i) {
    const std::string p = path + "/edges/" + std::to_string(i);
    expect_keys(earr[i], p, {"u", "v", "capacity"});
    edges.push_back({count_at(earr[i]["u"], p + "/u"), count_at(earr[i]["v"], p + "/v"),
                     rational_at(earr[i]["capacity"], p + "/capacity")});
  }
  std::vector<Firm> firms;
  const auto& farr = array_at(j["firms"], path + "/firms");
  for (std::size_t i = 0; i < farr.size(); ++i) {
    const std::string p = path + "/firms/" + std::to_string(i);
    expect_keys(farr[i], p, {"terminals", "demand"});
    firms.push_back({counts_at(farr[i]["terminals"], p + "/terminals"), rational_at(farr[i]["demand"], p + "/demand")});
  }
  return NetworkInstance(CapacitatedGraph(n, std::move(edges)), std::move(firms), mode);
}

inline SetCoverInstance parse_setcover(const json& j, const std::string& path) {
  expect_keys(j, path, {"universe", "sets"});
  std::size_t universe = count_at(j["universe"], path + "/universe");
  std::vector<std::vector<std::size_t>> sets;
  const auto& arr = array_at(j["sets"], path + "/sets");
  for (std::size_t i = 0; i < arr.size(); ++i) sets.push_back(counts_at(arr[i], path + "/sets/" + std::to_string(i)));
  return SetCoverInstance(universe, std::move(sets));
}

inline std::string line_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses and validates an instance document. Syntax errors carry the line
/// and column; schema errors carry the JSON path of the offending field.
inline InstanceFile parse_instance(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("syntax error at " + detail::line_context(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
  try {
    detail::expect_keys(doc, "", {"problem", "bid_spaces", "values"}, {"value_caps", "bids", "spectrum", "network", "setcover"});
    if (!doc["problem"].is_string()) throw ParseError("/problem: expected a string");
    const std::string problem = doc["problem"].get<std::string>();
    for (const char* other : {"spectrum", "network", "setcover"}) {
      if (other != problem && doc.contains(other)) {
        throw ParseError("/" + std::string(other) + ": payload does not match problem '" + problem + "'");
      }
    }
    if (!doc.contains(problem)) {
      if (problem != "spectrum" && problem != "network" && problem != "setcover") {
        throw ParseError("/problem: unknown problem '" + problem + "'");
      }
      throw ParseError("/" + problem + ": missing payload");
    }

    std::optional<ProblemPayload> payload;
    if (problem == "spectrum") payload.emplace(detail::parse_spectrum(doc["spectrum"], "/spectrum"));
    else if (problem == "network") payload.emplace(detail::parse_network(doc["network"], "/network"));
    else payload.emplace(detail::parse_setcover(doc["setcover"], "/setcover"));

    std::vector<std::vector<Rational>> levels;
    const auto& spaces = detail::array_at(doc["bid_spaces"], "/bid_spaces");
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      levels.push_back(detail::rationals_at(spaces[i], "/bid_spaces/" + std::to_string(i)));
    }
    auto values = detail::rationals_at(doc["values"], "/values");
    auto caps = doc.contains("value_caps") ? detail::rationals_at(doc["value_caps"], "/value_caps") : values;

    const std::size_t n = bidder_count(*payload);
    if (levels.size() != n) throw ParseError("/bid_spaces: expected " + std::to_string(n) + " bid spaces");
    if (values.size() != n) throw ParseError("/values: expected " + std::to_string(n) + " values");
    if (caps.size() != n) throw ParseError("/value_caps: expected " + std::to_string(n) + " caps");

    InstanceFile file{std::move(*payload), BidSpace(std::move(levels), std::move(caps)), std::move(values), std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
      if (file.values[i] < 0 || file.values[i] > file.bid_spaces.value_cap(i)) {
        throw ParseError("/values/" + std::to_string(i) + ": value outside [0, value cap]");
      }
    }
    if (doc.contains("bids")) {
      file.bids = detail::rationals_at(doc["bids"], "/bids");
      file.bid_spaces.validate_profile(*file.bids);
    } else {
      file.bid_spaces.truthful_profile(file.values, file.orientation());
    }
    return file;
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

inline nlohmann::json instance_to_json(const InstanceFile& file) {
  using nlohmann::json;
  json doc = json::object();
  doc["problem"] = file.problem();
  json spaces = json::array();
  for (const auto& row : file.bid_spaces.all_levels()) spaces.push_back(detail::rationals_json(row));
  doc["bid_spaces"] = spaces;
  doc["value_caps"] = detail::rationals_json(file.bid_spaces.value_caps());
  doc["values"] = detail::rationals_json(file.values);
  if (file.bids) doc["bids"] = detail::rationals_json(*file.bids);

  if (const auto* s = std::get_if<SpectrumInstance>(&file.payload)) {
    json geo = json::object();
    if (const auto* g = std::get_if<IntervalGeometry>(&s->geometry())) {
      geo["kind"] = "interval";
      geo["intervals"] = json::array();
      for (const auto& iv : g->intervals) {
        geo["intervals"].push_back({{"left", to_string(iv.left)}, {"length", to_string(iv.length)}});
      }
    } else if (const auto* g = std::get_if<DiskGeometry>(&s->geometry())) {
      geo["kind"] = "disk";
      geo["disks"] = json::array();
      for (const auto& d : g->disks) {
        geo["disks"].push_back({{"x", to_string(d.x)}, {"y", to_string(d.y)}, {"radius", to_string(d.radius)}});
      }
    } else {
      const auto& ex = std::get<ExplicitGeometry>(s->geometry());
      geo["kind"] = "explicit";
      geo["vertices"] = ex.graph.size();
      geo["degree_bound"] = ex.degree_bound;
      geo["edges"] = json::array();
      for (auto [u, v] : ex.graph.edges()) geo["edges"].push_back({u, v});
    }
    doc["spectrum"] = {{"channels", s->channels()}, {"geometry", geo}};
  } else if (const auto* net = std::get_if<NetworkInstance>(&file.payload)) {
    json edges = json::array();
    for (const auto& e : net->graph().edges()) {
      edges.push_back({{"u", e.u}, {"v", e.v}, {"capacity", to_string(e.capacity)}});
    }
    json firms = json::array();
    for (const auto& f : net->firms()) firms.push_back({{"terminals", f.terminals}, {"demand", to_string(f.demand)}});
    doc["network"] = {{"mode", to_string(net->mode())},
                      {"vertices", net->graph().vertex_count()},
                      {"edges", edges},
                      {"firms", firms}};
  } else {
    const auto& sc = std::get<SetCoverInstance>(file.payload);
    doc["setcover"] = {{"universe", sc.universe()}, {"sets", sc.sets()}};
  }
  return doc;
}

inline std::string serialize_instance(const InstanceFile& file) {
  return instance_to_json(file).dump(2) + "\n";
}

enum class GeometryKind { interval, disk, bounded_degree };

struct GenParams {
  std::size_t bidders = 6;     // vertices, firms or sets
  std::size_t bid_levels = 8;  // levels 0, 1, ..., bid_levels - 1
  // spectrum
  std::size_t channels = 1;
  GeometryKind geometry = GeometryKind::interval;
  Rational gamma{1};
  std::size_t degree = 4;
  // network
  std::size_t vertices = 5;
  std::size_t extra_edges = 3;
  Rational capacity{2};
  RoutingMode mode = RoutingMode::unicast;
  std::size_t multicast_terminals = 3;
  // setcover
  std::size_t elements = 6;
  std::size_t max_set_size = 3;
};

namespace detail {

// Reproducible draws from the raw engine output, independent of the
// standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace detail

/// Deterministic random instance for the given seed.
inline InstanceFile generate_instance(std::string_view problem, std::uint64_t seed, const GenParams& params = {}) {
  if (params.bid_levels < 2) throw ValidationError("need at least two bid levels");
  detail::Draw draw(seed);
  std::optional<ProblemPayload> payload;

  if (problem == "spectrum") {
    if (params.channels < 1) throw ValidationError("channel count must be at least 1");
    if (params.gamma < 1) throw ValidationError("gamma must be at least 1");
    const std::size_t n = params.bidders;
    const auto extent = static_cast<std::int64_t>(2 * n);  // positions on a grid of quarters
    GeometrySpec geo;
    auto draw_size = [&] {
      // l_min * (1 + (γ - 1) * j/4), j in 0..4
      return Rational(1) + (params.gamma - 1) * Rational(draw.between(0, 4), 4);
    };
    if (params.geometry == GeometryKind::interval) {
      IntervalGeometry g;
      for (std::size_t i = 0; i < n; ++i) g.intervals.push_back({Rational(draw.between(0, extent), 4), draw_size()});
      geo = std::move(g);
    } else if (params.geometry == GeometryKind::disk) {
      DiskGeometry g;
      for (std::size_t i = 0; i < n; ++i) {
        g.disks.push_back({Rational(draw.between(0, extent), 4), Rational(draw.between(0, extent), 4),
                           draw_size() / 2});
      }
      geo = std::move(g);
    } else {
      if (params.degree < 1) throw ValidationError("degree bound must be at least 1");
      ExplicitGeometry g{Graph(n), params.degree};
      for (std::size_t attempt = 0; attempt < n * params.degree; ++attempt) {
        std::size_t u = draw.below(n), v = draw.below(n);
        if (u == v || g.graph.adjacent(u, v)) continue;
        if (g.graph.degree(u) >= params.degree || g.graph.degree(v) >= params.degree) continue;
        g.graph.add_edge(u, v);
      }
      geo = std::move(g);
    }
    payload.emplace(SpectrumInstance(std::move(geo), params.channels));
  } else if (problem == "network") {
    if (params.capacity <= 1) throw ValidationError("capacity must exceed 1");
    if (params.vertices < 2) throw ValidationError("network needs at least two vertices");
    const std::size_t nv = params.vertices;
    std::vector<NetworkEdge> edges;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto capacity = [&] { return draw.below(4) == 0 ? params.capacity + 1 : params.capacity; };
    for (std::size_t v = 1; v < nv; ++v) {
      std::size_t u = draw.below(v);
      seen.emplace(u, v);
      edges.push_back({u, v, capacity()});
    }
    for (std::size_t attempt = 0; attempt < 4 * params.extra_edges && seen.size() < nv - 1 + params.extra_edges;
         ++attempt) {
      std::size_t u = draw.below(nv), v = draw.below(nv);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (!seen.emplace(u, v).second) continue;
      edges.push_back({u, v, capacity()});
    }
    std::vector<Firm> firms;
    const std::size_t width =
        params.mode == RoutingMode::unicast ? 2 : std::min(std::max<std::size_t>(params.multicast_terminals, 2), nv);
    for (std::size_t i = 0; i < params.bidders; ++i) {
      std::vector<std::size_t> pool(nv);
      for (std::size_t v = 0; v < nv; ++v) pool[v] = v;
      std::vector<std::size_t> terminals;
      for (std::size_t t = 0; t < width; ++t) {
        std::size_t j = draw.below(pool.size());
        terminals.push_back(pool[j]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
      }
      firms.push_back({terminals, Rational(draw.between(1, 4), 4)});
    }
    payload.emplace(NetworkInstance(CapacitatedGraph(nv, std::move(edges)), std::move(firms), params.mode));
  } else if (problem == "setcover") {
    if (params.elements < 1 || params.max_set_size < 1) throw ValidationError("empty set cover parameters");
    std::vector<std::vector<std::size_t>> sets;
    std::vector<bool> hit(params.elements, false);
    for (std::size_t i = 0; i < params.bidders; ++i) {
      std::size_t size = 1 + draw.below(std::min(params.max_set_size, params.elements));
      std::set<std::size_t> s;
      while (s.size() < size) s.insert(draw.below(params.elements));
      for (std::size_t e : s) hit[e] = true;
      sets.emplace_back(s.begin(), s.end());
    }
    std::vector<std::size_t> orphans;
    for (std::size_t e = 0; e < params.elements; ++e) {
      if (!hit[e]) orphans.push_back(e);
    }
    if (!orphans.empty()) sets.push_back(orphans);  // safety set
    payload.emplace(SetCoverInstance(params.elements, std::move(sets)));
  } else {
    throw ValidationError("unknown problem '" + std::string(problem) + "'");
  }

  const std::size_t n = bidder_count(*payload);
  const auto top = static_cast<std::int64_t>(params.bid_levels) - 1;
  std::vector<Rational> levels;
  for (std::int64_t b = 0; b <= top; ++b) levels.push_back(Rational(b));
  // Values on a half grid strictly below the top level.
  const Rational cap(2 * top - 1, 2);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < n; ++i) values.push_back(Rational(draw.between(0, 2 * top - 1), 2));
  BidSpace space(std::vector<std::vector<Rational>>(n, levels), std::vector<Rational>(n, cap));
  return InstanceFile{std::move(*payload), std::move(space), std::move(values), std::nullopt};
}

}  // namespace daa
