#include "dpimp/rng.h"

#include <cmath>
#include <stdexcept>

namespace dpimp {

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) {
  uint64_t s = seed;
  std::seed_seq seq{SplitMix64(s), SplitMix64(s), SplitMix64(s),
                    SplitMix64(s)};
  engine_.seed(seq);
}

double Rng::NextOpenUnit() {
  // 53 random bits, shifted to the centre of their cell so 0 never occurs.
  uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

Rng Rng::Split() { return Rng(engine_()); }

uint64_t Rng::DeriveSeed(uint64_t seed, uint64_t index) {
  uint64_t s = seed ^ SplitMix64(index);
  return SplitMix64(s);
}

double SampleLaplace(double center, double width, Rng& rng) {
  if (!(width > 0)) {
    throw std::invalid_argument("Laplace width must be positive");
  }
  double u = rng.NextOpenUnit() - 0.5;
  double sign = u < 0 ? -1.0 : 1.0;
  return center - width * sign * std::log1p(-2.0 * std::fabs(u));
}

}  // namespace dpimp
