#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace srb {

// Counter-keyed random stream: the pair (master_seed, stream_id) fully
// determines the draw sequence, and distinct stream ids give statistically
// independent streams. Replicates, datasets and simulation cells each own a
// derived stream, so results do not depend on execution order or thread
// scheduling.
//
// The generator is xoshiro256++ seeded through a splitmix64 expansion; all
// distribution transforms are implemented here rather than taken from
// <random> so the sequence is stable across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return id_; }

  // Independent child stream keyed by `key`. Derivation is a one-way mix of
  // (stream_id, key), so nested derivations stay collision-free in practice.
  RngStream derived(std::uint64_t key) const;

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_unit();

  // Uniform integer in [0, bound); unbiased (Lemire rejection). bound >= 1.
  std::size_t next_index(std::size_t bound);

  double next_normal();
  double next_pareto(double alpha);       // Pareto-I, scale 1, support [1, inf)
  double next_centered_chisq1();          // Z^2 - 1: mean 0, variance 2
  double next_bernoulli(double p);        // 0.0 or 1.0
  double next_poisson(double lambda);     // nonnegative integer as double

 private:
  std::uint64_t master_;
  std::uint64_t id_;
  std::array<std::uint64_t, 4> state_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace srb
