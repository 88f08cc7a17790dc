#include "pairsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pairsim {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWey0 = 0x9E3779B9u;
constexpr std::uint32_t kWey1 = 0xBB67AE85u;
}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        const std::array<std::uint32_t, 4>& counter) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  std::uint32_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      k0 += kWey0;
      k1 += kWey1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c0 = hi1 ^ c1 ^ k0;
    c1 = lo1;
    c2 = hi0 ^ c3 ^ k1;
    c3 = lo0;
  }
  return {c0, c1, c2, c3};
}

void RngStream::refill() {
  buf_ = philox4x32(seed_, {static_cast<std::uint32_t>(pulse_),
                            static_cast<std::uint32_t>(pulse_ >> 32), tag_, block_});
  ++block_;
  pos_ = 0;
}

std::uint64_t RngStream::bits64() {
  if (pos_ > 2) refill();
  const std::uint64_t lo = buf_[pos_];
  const std::uint64_t hi = buf_[pos_ + 1];
  pos_ += 2;
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  return static_cast<double>(bits64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1 always
  return r * std::cos(2.0 * M_PI * u2);
}

std::uint64_t RngStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean > 64.0) {
    const double draw = std::round(mean + std::sqrt(mean) * normal());
    return draw < 0.0 ? 0 : static_cast<std::uint64_t>(draw);
  }
  const double u = uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::uint64_t k = 0;
  while (u >= cdf && k < 2048) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::uint64_t RngStream::poisson_ge1(double mean) {
  if (mean <= 0.0) throw std::invalid_argument("poisson_ge1: mean must be positive");
  // Inversion on the distribution conditioned to k >= 1.
  const double tail = -std::expm1(-mean);  // P(k >= 1)
  const double u = uniform() * tail;
  double pmf = std::exp(-mean) * mean;  // P(k = 1)
  double cdf = pmf;
  std::uint64_t k = 1;
  while (u >= cdf && k < 2048) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::uint64_t RngStream::binomial(std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  const double nd = static_cast<double>(n);
  std::uint64_t draw;
  if (nd * q > 64.0) {
    const double mean = nd * q;
    const double sd = std::sqrt(mean * (1.0 - q));
    double x = std::round(mean + sd * normal());
    if (x < 0.0) x = 0.0;
    if (x > nd) x = nd;
    draw = static_cast<std::uint64_t>(x);
  } else if (n <= 16) {
    draw = 0;
    for (std::uint64_t i = 0; i < n; ++i)
      if (uniform() < q) ++draw;
  } else {
    // Inversion walk on the binomial pmf.
    const double u = uniform();
    double pmf = std::pow(1.0 - q, nd);
    double cdf = pmf;
    std::uint64_t k = 0;
    while (u >= cdf && k < n) {
      ++k;
      pmf *= (nd - static_cast<double>(k - 1)) / static_cast<double>(k) * q / (1.0 - q);
      cdf += pmf;
    }
    draw = k;
  }
  return flip ? n - draw : draw;
}

std::uint64_t RngStream::thermal(double mean) {
  if (mean <= 0.0) return 0;
  const double q = mean / (1.0 + mean);
  const double u = uniform();
  // P(N >= k) = q^k, so N = floor(log(1-u) / log(q)).
  const double x = std::log1p(-u) / std::log(q);
  return static_cast<std::uint64_t>(x);
}

}  // namespace pairsim
