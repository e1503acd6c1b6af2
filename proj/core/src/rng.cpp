#include "srb/rng.hpp"

#include <cmath>

#include "srb/errors.hpp"

namespace srb {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix2(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b * 0xD2B74407B1CE6E93ull + 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), id_(stream_id) {
  std::uint64_t x = mix2(master_seed, stream_id);
  for (auto& word : state_) word = splitmix64_next(x);
}

RngStream RngStream::derived(std::uint64_t key) const {
  return RngStream(master_, mix2(id_, key));
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::next_index(std::size_t bound) {
  if (bound == 0) throw DataError("RngStream::next_index: bound must be >= 1");
  std::uint64_t range = static_cast<std::uint64_t>(bound);
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

double RngStream::next_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double radius = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1), u1 < 1
  double angle = kTwoPi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

double RngStream::next_pareto(double alpha) {
  if (!(alpha > 0)) throw DataError("RngStream::next_pareto: alpha must be > 0");
  return std::pow(1.0 - next_unit(), -1.0 / alpha);
}

double RngStream::next_centered_chisq1() {
  double z = next_normal();
  return z * z - 1.0;
}

double RngStream::next_bernoulli(double p) {
  return next_unit() < p ? 1.0 : 0.0;
}

double RngStream::next_poisson(double lambda) {
  if (lambda < 0 || !std::isfinite(lambda))
    throw DataError("RngStream::next_poisson: lambda must be finite and >= 0");
  if (lambda == 0) return 0.0;
  if (lambda < 30.0) {
    // Knuth multiplication method
    double limit = std::exp(-lambda);
    double prod = 1.0;
    long k = 0;
    do {
      ++k;
      prod *= next_unit();
    } while (prod > limit);
    return static_cast<double>(k - 1);
  }
  // Hoermann's PTRS transformed rejection for large means
  double slam = std::sqrt(lambda);
  double loglam = std::log(lambda);
  double b = 0.931 + 2.53 * slam;
  double a = -0.059 + 0.02483 * b;
  double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    double u = next_unit() - 0.5;
    double v = next_unit();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * loglam - lambda - std::lgamma(k + 1.0)) {
      return k;
    }
  }
}

}  // namespace srb
