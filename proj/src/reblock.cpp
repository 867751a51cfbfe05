#include "dqsci/afqmc/reblock.hpp"

#include <cmath>
#include <vector>

#include "dqsci/error.hpp"

namespace dqsci::afqmc {

namespace {

struct Level {
  double mean;
  double error;
};

Level stats(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  if (x.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

ReblockResult naive_error(std::span<const double> series) {
  require(!series.empty(), "error estimate needs at least one sample");
  const Level l = stats(std::vector<double>(series.begin(), series.end()));
  return {l.mean, l.error, 0};
}

ReblockResult reblock(std::span<const double> series) {
  require(series.size() >= kMinReblockSamples, "reblocking needs at least 8 samples");
  std::vector<double> data(series.begin(), series.end());
  const double n = static_cast<double>(data.size());
  const Level base = stats(data);
  ReblockResult out{base.mean, base.error, 0};
  if (base.error == 0.0) return out;

  std::vector<Level> levels{base};
  while (data.size() >= 4) {
    std::vector<double> next(data.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = 0.5 * (data[2 * i] + data[2 * i + 1]);
    data = std::move(next);
    levels.push_back(stats(data));
  }
  int chosen = static_cast<int>(levels.size()) - 1;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const double ratio = levels[l].error / base.error;
    if (std::pow(2.0, 3.0 * static_cast<double>(l)) > 2.0 * n * std::pow(ratio, 4)) {
      chosen = static_cast<int>(l);
      break;
    }
  }
  out.level = chosen;
  out.error = std::max(levels[static_cast<std::size_t>(chosen)].error, base.error);
  return out;
}

}  // namespace dqsci::afqmc
