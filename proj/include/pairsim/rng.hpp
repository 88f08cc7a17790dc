#pragma once

#include <array>
#include <cstdint>

namespace pairsim {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
/// Every 128-bit output block is a pure function of (key, counter), so the
/// pulse train can be partitioned across threads in any way without changing
/// a single draw.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        const std::array<std::uint32_t, 4>& counter);

/// Purpose tags separating the random streams consumed by one pulse.
/// Each (seed, pulse_index, tag) triple owns an independent uniform stream.
enum class StreamTag : std::uint32_t {
  PulseMain = 0,    // pair count + background gate
  Photons = 1,      // per-photon thinning, routing, analyzer outcomes
  HomDirA = 2,      // HOM second-direction pair count lives in PulseMain;
  HomRouting = 3,   //   routing and interference draws here
  Bootstrap = 16,   // tomography bootstrap resampling (pulse = replica index)
  Synthetic = 32,   // test-stream generation
};

/// Lazily filled uniform stream for one (seed, pulse, tag) triple.
/// Draw order within a stream is part of the determinism contract; callers
/// must consume in a fixed order per pulse.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t pulse, StreamTag tag)
      : seed_(seed), pulse_(pulse), tag_(static_cast<std::uint32_t>(tag)) {}

  /// 53-bit uniform in [0, 1).
  double uniform();

  std::uint64_t bits64();

  /// Standard normal via Box-Muller (always consumes two uniforms).
  double normal();

  bool bernoulli(double p) { return uniform() < p; }

  /// Poisson draw. Inversion walk for small means, normal approximation
  /// above mean 64 (only the bootstrap and test helpers reach that regime).
  std::uint64_t poisson(double mean);

  /// Poisson conditioned on >= 1, for the rare-event background gate.
  std::uint64_t poisson_ge1(double mean);

  /// Binomial draw; exact inversion when n*min(p,1-p) is small, normal
  /// approximation otherwise.
  std::uint64_t binomial(std::uint64_t n, double p);

  /// Thermal (geometric) pair-number law P(n) = mu^n / (1+mu)^(n+1).
  std::uint64_t thermal(double mean);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t pulse_;
  std::uint32_t tag_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;  // consumed 32-bit words in buf_
};

}  // namespace pairsim
