#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqsci/determinant.hpp"
#include "dqsci/doci.hpp"

namespace dqsci {

/// One distinct measured pair string and how often it was seen.
struct ShotRecord {
  PairString bitstring;
  std::uint64_t count = 0;

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

struct SamplerConfig {
  enum class Source { Surrogate, File };

  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  Source source = Source::Surrogate;
  std::filesystem::path counts_path;  ///< used when source == File
};

/// Parses count-file text: "BITSTRING COUNT" per line, orbital 0 leftmost,
/// '#' comments. Duplicate strings are summed; output is sorted by string.
/// When `n_orbitals` is given every bitstring must have that length,
/// otherwise the first line fixes it.
std::vector<ShotRecord> parse_counts(std::istream& in, std::optional<int> n_orbitals = {});
std::vector<ShotRecord> load_counts(const std::filesystem::path& path,
                                    std::optional<int> n_orbitals = {});
void write_counts(std::ostream& out, const std::vector<ShotRecord>& records, int n_orbitals);

struct FilterResult {
  std::vector<ShotRecord> records;
  std::uint64_t kept_shots = 0;
  std::uint64_t discarded_shots = 0;

  /// Discarded / total; 0 when there were no shots at all.
  double discard_fraction() const noexcept;
};

/// Keeps the records whose popcount equals `n_pairs`.
FilterResult filter_particle_number(const std::vector<ShotRecord>& records, int n_pairs);

/// Multinomial draw of `cfg.shots` samples from |c_i|^2. Throws
/// ContractViolation if the amplitudes are not normalized to 1e-10.
std::vector<ShotRecord> surrogate_sample(const DociSolution& w, const SamplerConfig& cfg);

/// The R most frequent strings; ties by ascending numeric mask.
std::vector<PairString> top_r(const std::vector<ShotRecord>& records, std::size_t r);

std::uint64_t total_shots(const std::vector<ShotRecord>& records) noexcept;

}  // namespace dqsci
