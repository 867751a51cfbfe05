#pragma once

#include <span>

namespace dqsci::afqmc {

struct ReblockResult {
  double mean = 0.0;
  double error = 0.0;
  /// Blocking level chosen (block length 2^level).
  int level = 0;
};

inline constexpr std::size_t kMinReblockSamples = 8;

/// Successive pairwise blocking with the plateau criterion
/// 2^(3l) > 2 n (se_l / se_0)^4. The returned error never falls below the
/// naive i.i.d. estimate. Throws ContractViolation for fewer than 8 samples.
ReblockResult reblock(std::span<const double> series);

/// Plain mean and sample standard error, no blocking. Needs >= 1 sample.
ReblockResult naive_error(std::span<const double> series);

}  // namespace dqsci::afqmc
