#ifndef BELLCERT_RNG_HPP
#define BELLCERT_RNG_HPP

#include "bellcert/qcore.hpp"

#include <cstdint>
#include <random>

namespace bellcert {

/// Seedable generator with a platform-independent output stream.
///
/// The engine is std::mt19937_64 (fully specified by the standard) seeded with
/// splitmix64(seed + 0x9E3779B97F4A7C15 * (stream + 1)). Every derived quantity is
/// computed here rather than with <random> distributions, whose algorithms are
/// implementation-defined:
///   uniform()          one engine draw, top 53 bits, in [0, 1)
///   normal()           two uniform() draws, Box-Muller cosine branch
///   complex_normal()   normal() for the real part, then normal() for the imaginary part
///   haar_vector(d)     d complex_normal() draws in index order, normalized
///   exponential()      one uniform() draw, -log(1 - u)
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();
  double normal();
  Complex complex_normal();
  double exponential();
  ComplexVector haar_vector(std::size_t d);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bellcert

#endif  // BELLCERT_RNG_HPP
