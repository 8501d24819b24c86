#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace triplekit {

// Deterministic splitmix64 generator. Every randomized routine in the library
// takes an explicit Rng (or a seed) so runs are reproducible across platforms;
// std::mt19937 distributions are implementation-defined, this is not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns 0, so logs are safe.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Draws two uniforms per call; no spare is
  // cached so fork() streams stay independent of call parity.
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Complex standard normal with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    double re = gaussian();
    double im = gaussian();
    return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
  }

  // Child generator for sample index `stream`. Derived from the construction
  // seed rather than the evolved state, so sample i gets the same stream no
  // matter how many draws happened in between or on which thread.
  Rng fork(std::uint64_t stream) const {
    Rng child(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    child.next_u64();  // decorrelate nearby streams
    return child;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace triplekit
