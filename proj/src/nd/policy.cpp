#include "jcsc/nd/policy.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "jcsc/core/error.hpp"

namespace jcsc::nd {

std::string_view to_string(Algorithm a) { return a == Algorithm::cra ? "cra" : "rl_cra"; }

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "cra") return Algorithm::cra;
  if (name == "rl_cra") return Algorithm::rl_cra;
  throw ParseError("unknown ND algorithm '" + std::string(name) + "' (expected cra or rl_cra)");
}

SectorPolicy::SectorPolicy(Mode mode, std::vector<double> weights, double floor)
    : mode_(mode), weights_(std::move(weights)), floor_(floor) {
  if (weights_.empty()) throw InvariantError("policy needs at least one sector");
  if (floor_ < 0.0 || floor_ * static_cast<double>(weights_.size()) > 1.0)
    throw InvariantError("exploration floor must satisfy 0 <= eps * sectors <= 1");
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

SectorPolicy SectorPolicy::uniform(int sector_count) {
  if (sector_count < 1) throw InvariantError("sector_count must be >= 1");
  return SectorPolicy(Mode::uniform, std::vector<double>(static_cast<std::size_t>(sector_count), 1.0),
                      0.0);
}

SectorPolicy SectorPolicy::from_hits(std::span<const int> hits, double prior_boost, double floor) {
  if (prior_boost < 0.0) throw InvariantError("prior_boost must be >= 0");
  std::vector<double> w(hits.size());
  for (std::size_t s = 0; s < hits.size(); ++s) w[s] = 1.0 + prior_boost * hits[s];
  return SectorPolicy(Mode::rl, std::move(w), floor);
}

double SectorPolicy::raw_probability(int sector) const {
  return weights_[static_cast<std::size_t>(sector)] / total_;
}

double SectorPolicy::probability(int sector) const {
  if (mode_ == Mode::uniform) return 1.0 / static_cast<double>(weights_.size());
  const double s = static_cast<double>(weights_.size());
  return floor_ + (1.0 - s * floor_) * raw_probability(sector);
}

std::vector<double> SectorPolicy::probabilities() const {
  std::vector<double> p(weights_.size());
  for (std::size_t s = 0; s < p.size(); ++s) p[s] = probability(static_cast<int>(s));
  return p;
}

int SectorPolicy::sample(double u) const {
  const int n = sector_count();
  if (mode_ == Mode::uniform) return std::min(static_cast<int>(u * n), n - 1);
  const double spread = 1.0 - static_cast<double>(n) * floor_;
  double acc = 0.0;
  for (int s = 0; s < n; ++s) {
    acc += floor_ + spread * weights_[static_cast<std::size_t>(s)] / total_;
    if (u < acc) return s;
  }
  return n - 1;
}

void SectorPolicy::reinforce(int sector, bool discovered, double rate) {
  if (mode_ == Mode::uniform) return;
  weights_[static_cast<std::size_t>(sector)] *= discovered ? 1.0 + rate : 1.0 - rate;
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  renormalise_if_needed();
}

void SectorPolicy::renormalise_if_needed() {
  // Probabilities only depend on ratios; keep the magnitudes in range.
  if (total_ > 1e-100 && total_ < 1e100) return;
  const double scale = static_cast<double>(weights_.size()) / total_;
  for (double& w : weights_) w *= scale;
  total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::vector<int> sensing_scan(const core::NodeWorld& world, std::size_t node) {
  std::vector<int> hits(static_cast<std::size_t>(world.sector_count), 0);
  for (std::size_t j = 0; j < world.size(); ++j) {
    if (j == node || !world.in_sense_range(node, j)) continue;
    ++hits[static_cast<std::size_t>(
        core::sector_of(world.positions[node], world.positions[j], world.sector_count))];
  }
  return hits;
}

}  // namespace jcsc::nd
