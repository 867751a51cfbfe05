#include "dqsci/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dqsci/error.hpp"
#include "dqsci/rng.hpp"

namespace dqsci {

namespace {

std::vector<ShotRecord> merge(const std::map<SpinString, std::uint64_t>& counts) {
  std::vector<ShotRecord> out;
  out.reserve(counts.size());
  for (const auto& [bits, c] : counts) out.push_back({PairString{bits}, c});
  return out;
}

}  // namespace

std::vector<ShotRecord> parse_counts(std::istream& in, std::optional<int> n_orbitals) {
  std::map<SpinString, std::uint64_t> counts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string bits;
    std::string count_text;
    std::string extra;
    if (!(ls >> bits)) continue;
    if (!(ls >> count_text) || (ls >> extra))
      throw ParseError("expected 'BITSTRING COUNT'", lineno);
    if (bits.find_first_not_of("01") != std::string::npos)
      throw ParseError("bitstring '" + bits + "' has characters other than 0/1", lineno);
    const int len = static_cast<int>(bits.size());
    if (len > SpinString::kMaxBits) throw ParseError("bitstring longer than 64 orbitals", lineno);
    if (!n_orbitals) n_orbitals = len;
    if (len != *n_orbitals)
      throw ParseError("bitstring length " + std::to_string(len) + ", expected " +
                           std::to_string(*n_orbitals),
                       lineno);
    long long count = 0;
    auto [ptr, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size())
      throw ParseError("count '" + count_text + "' is not an integer", lineno);
    if (count <= 0) throw ParseError("count must be positive", lineno);
    counts[SpinString::from_string(bits)] += static_cast<std::uint64_t>(count);
  }
  return merge(counts);
}

std::vector<ShotRecord> load_counts(const std::filesystem::path& path,
                                    std::optional<int> n_orbitals) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open count file " + path.string(), 0);
  return parse_counts(in, n_orbitals);
}

void write_counts(std::ostream& out, const std::vector<ShotRecord>& records, int n_orbitals) {
  for (const auto& r : records) out << r.bitstring.bits.to_string(n_orbitals) << ' ' << r.count << '\n';
}

double FilterResult::discard_fraction() const noexcept {
  const auto total = kept_shots + discarded_shots;
  return total == 0 ? 0.0 : static_cast<double>(discarded_shots) / static_cast<double>(total);
}

FilterResult filter_particle_number(const std::vector<ShotRecord>& records, int n_pairs) {
  FilterResult out;
  for (const auto& r : records) {
    if (r.bitstring.n_pairs() == n_pairs) {
      out.records.push_back(r);
      out.kept_shots += r.count;
    } else {
      out.discarded_shots += r.count;
    }
  }
  return out;
}

std::vector<ShotRecord> surrogate_sample(const DociSolution& w, const SamplerConfig& cfg) {
  require(cfg.shots >= 1, "sampler needs at least one shot");
  require(!w.basis.empty() && static_cast<std::size_t>(w.amplitudes.size()) == w.basis.size(),
          "DOCI solution has no basis or mismatched amplitudes");
  const double norm2 = w.amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw ContractViolation("DOCI amplitudes are not normalized (sum c^2 = " +
                            std::to_string(norm2) + ")");

  std::vector<double> cdf(w.basis.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += w.amplitudes(static_cast<Eigen::Index>(i)) * w.amplitudes(static_cast<Eigen::Index>(i));
    cdf[i] = acc;
  }
  std::vector<std::uint64_t> hits(cdf.size(), 0);
  Rng rng(cfg.seed);
  for (std::uint64_t s = 0; s < cfg.shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  std::vector<ShotRecord> out;
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i]) out.push_back({w.basis[i], hits[i]});
  return out;
}

std::vector<PairString> top_r(const std::vector<ShotRecord>& records, std::size_t r) {
  require(r >= 1, "top_r needs R >= 1");
  std::map<SpinString, std::uint64_t> merged;
  for (const auto& rec : records) merged[rec.bitstring.bits] += rec.count;
  std::vector<ShotRecord> sorted = merge(merged);
  std::stable_sort(sorted.begin(), sorted.end(), [](const ShotRecord& a, const ShotRecord& b) {
    return a.count > b.count;
  });
  std::vector<PairString> out;
  for (std::size_t i = 0; i < std::min(r, sorted.size()); ++i) out.push_back(sorted[i].bitstring);
  return out;
}

std::uint64_t total_shots(const std::vector<ShotRecord>& records) noexcept {
  std::uint64_t t = 0;
  for (const auto& r : records) t += r.count;
  return t;
}

}  // namespace dqsci
