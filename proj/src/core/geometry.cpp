#include "jcsc/core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jcsc/core/error.hpp"

namespace jcsc::core {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool Region::contains(Vec2 p) const {
  return p.x >= origin.x && p.x <= origin.x + side_m && p.y >= origin.y &&
         p.y <= origin.y + side_m;
}

bool NodeWorld::in_comm_range(std::size_t a, std::size_t b) const {
  return distance(positions[a], positions[b]) <= comm_range_m;
}

bool NodeWorld::in_sense_range(std::size_t a, std::size_t b) const {
  return distance(positions[a], positions[b]) <= sense_range_m;
}

int sector_count_for(double beamwidth_deg) {
  if (!(beamwidth_deg > 0.0) || beamwidth_deg > 360.0)
    throw InvariantError("beamwidth_deg must be in (0, 360]");
  return static_cast<int>(std::lround(360.0 / beamwidth_deg));
}

namespace {

NodeWorld empty_world(const RadioSpec& radio) {
  if (!(radio.comm_range_m > 0.0)) throw InvariantError("comm_range_m must be positive");
  if (!(radio.sense_to_comm_ratio > 0.0))
    throw InvariantError("sense_to_comm_ratio must be positive");
  NodeWorld w;
  w.comm_range_m = radio.comm_range_m;
  w.sense_to_comm_ratio = radio.sense_to_comm_ratio;
  w.sense_range_m = radio.sense_to_comm_ratio * radio.comm_range_m;
  w.sector_count = sector_count_for(radio.beamwidth_deg);
  return w;
}

}  // namespace

NodeWorld place_nodes(RngHandle rng, std::size_t n, double side_m, const RadioSpec& radio) {
  if (n == 0) throw InvariantError("place_nodes: empty world (n = 0)");
  if (!(side_m > 0.0)) throw InvariantError("place_nodes: side_m must be positive");
  NodeWorld w = empty_world(radio);
  w.region = Region{{0.0, 0.0}, side_m};
  Rng r(rng);
  w.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = r.uniform() * side_m;
    const double y = r.uniform() * side_m;
    w.positions.push_back({x, y});
  }
  return w;
}

NodeWorld place_in_comm_disk(RngHandle rng, std::size_t n_neighbors, const RadioSpec& radio) {
  NodeWorld w = empty_world(radio);
  const double rc = radio.comm_range_m;
  w.region = Region{{-rc, -rc}, 2.0 * rc};
  Rng r(rng);
  w.positions.reserve(n_neighbors + 1);
  w.positions.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < n_neighbors; ++i) {
    // Area-uniform: radius ~ rc * sqrt(U). A zero radius would collide with
    // the reference; redraw (probability 2^-53 per draw).
    double radius = 0.0;
    while (radius == 0.0) radius = rc * std::sqrt(r.uniform());
    const double theta = 2.0 * std::numbers::pi * r.uniform();
    w.positions.push_back({radius * std::cos(theta), radius * std::sin(theta)});
  }
  return w;
}

NodeWorld world_from_positions(std::vector<Vec2> positions, const RadioSpec& radio) {
  if (positions.empty()) throw InvariantError("world_from_positions: empty world");
  NodeWorld w = empty_world(radio);
  double lo_x = positions[0].x, hi_x = lo_x, lo_y = positions[0].y, hi_y = lo_y;
  for (const Vec2& p : positions) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  w.region = Region{{lo_x, lo_y}, std::max(hi_x - lo_x, hi_y - lo_y)};
  w.positions = std::move(positions);
  return w;
}

int sector_of(Vec2 from, Vec2 to, int sector_count) {
  if (sector_count < 1) throw InvariantError("sector_count must be >= 1");
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) throw InvariantError("sector_of: coincident points have no bearing");
  double bearing = std::atan2(dy, dx);
  if (bearing < 0.0) bearing += 2.0 * std::numbers::pi;
  double t = bearing * sector_count / (2.0 * std::numbers::pi);
  // Snap values within rounding noise of an edge onto it so that edge
  // bearings go to the higher sector consistently in both directions.
  const double nearest = std::round(t);
  if (std::abs(t - nearest) < 1e-12) t = nearest;
  int idx = static_cast<int>(std::floor(t));
  return ((idx % sector_count) + sector_count) % sector_count;
}

}  // namespace jcsc::core
