#ifndef DPIMP_RNG_H_
#define DPIMP_RNG_H_

#include <cstdint>
#include <random>

namespace dpimp {

// One step of the SplitMix64 sequence; used to derive independent seeds.
uint64_t SplitMix64(uint64_t& state);

// Seeded 64-bit generator. Split() yields a child stream whose seed is drawn
// from this one.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64() { return engine_(); }
  // Uniform in the open interval (0, 1).
  double NextOpenUnit();
  Rng Split();

  // Seed of the `index`-th stream derived from `seed`, independent of the
  // order in which streams are requested.
  static uint64_t DeriveSeed(uint64_t seed, uint64_t index);

 private:
  std::mt19937_64 engine_;
};

// Draws from the Laplace distribution with the given center and width
// (scale) by inverting its CDF. Throws std::invalid_argument unless
// width > 0.
double SampleLaplace(double center, double width, Rng& rng);

}  // namespace dpimp

#endif  // DPIMP_RNG_H_
