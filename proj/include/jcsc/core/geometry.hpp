#pragma once

#include <cstddef>
#include <vector>

#include "jcsc/core/rng.hpp"

namespace jcsc::core {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

/// Radio footprint shared by the ND and MAC simulators.
struct RadioSpec {
  double comm_range_m = 50.0;
  double sense_to_comm_ratio = 0.5;
  double beamwidth_deg = 10.0;
};

/// Axis-aligned deployment square [origin, origin + side]^2.
struct Region {
  Vec2 origin{};
  double side_m = 0.0;
  [[nodiscard]] bool contains(Vec2 p) const;
};

struct NodeWorld {
  std::vector<Vec2> positions;
  double comm_range_m = 0.0;
  double sense_range_m = 0.0;
  double sense_to_comm_ratio = 0.0;
  int sector_count = 0;
  Region region;

  [[nodiscard]] std::size_t size() const { return positions.size(); }
  [[nodiscard]] bool in_comm_range(std::size_t a, std::size_t b) const;
  [[nodiscard]] bool in_sense_range(std::size_t a, std::size_t b) const;
};

/// round(360 / beamwidth). Throws InvariantError unless the result is >= 1.
int sector_count_for(double beamwidth_deg);

/// n nodes i.i.d. uniform over [0, side_m]^2. Throws InvariantError on n = 0
/// or side_m <= 0.
NodeWorld place_nodes(RngHandle rng, std::size_t n, double side_m, const RadioSpec& radio = {});

/// Reference node at the origin (index 0) followed by n_neighbors nodes
/// uniform over the disk of radius comm_range_m around it. The declared
/// region is the disk's bounding square.
NodeWorld place_in_comm_disk(RngHandle rng, std::size_t n_neighbors, const RadioSpec& radio);

/// World from explicit coordinates; the region is their bounding square.
NodeWorld world_from_positions(std::vector<Vec2> positions, const RadioSpec& radio);

/// Index of the beam sector of `to` as seen from `from`: bearing in [0, 360)
/// divided into half-open sectors of 360/sector_count degrees. A bearing on a
/// sector edge belongs to the higher-index sector. Throws InvariantError for
/// coincident points.
int sector_of(Vec2 from, Vec2 to, int sector_count);

}  // namespace jcsc::core
