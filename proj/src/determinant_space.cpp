#include "dqsci/determinant_space.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "dqsci/error.hpp"

namespace dqsci {

DeterminantSpace::DeterminantSpace(int n_orbitals, int n_alpha, int n_beta)
    : n_orbitals_(n_orbitals), n_alpha_(n_alpha), n_beta_(n_beta) {
  require(n_orbitals >= 0 && n_orbitals <= SpinString::kMaxBits,
          "orbital count outside [0, 64]");
  require(n_alpha >= 0 && n_alpha <= n_orbitals && n_beta >= 0 && n_beta <= n_orbitals,
          "invalid particle numbers for determinant space");
}

DeterminantSpace::DeterminantSpace(std::vector<Determinant> dets, int n_orbitals, int n_alpha,
                                   int n_beta)
    : DeterminantSpace(n_orbitals, n_alpha, n_beta) {
  for (const auto& d : dets) {
    if (d.alpha.popcount() != n_alpha || d.beta.popcount() != n_beta)
      throw ContractViolation("determinant " + to_string(d, n_orbitals) + " outside sector (" +
                              std::to_string(n_alpha) + ", " + std::to_string(n_beta) + ")");
    if (!d.alpha.fits(n_orbitals) || !d.beta.fits(n_orbitals))
      throw ContractViolation("determinant occupies an orbital beyond " +
                              std::to_string(n_orbitals));
  }
  std::sort(dets.begin(), dets.end());
  dets.erase(std::unique(dets.begin(), dets.end()), dets.end());
  dets_ = std::move(dets);
}

std::optional<std::size_t> DeterminantSpace::index_of(const Determinant& d) const {
  auto it = std::lower_bound(dets_.begin(), dets_.end(), d);
  if (it == dets_.end() || *it != d) return std::nullopt;
  return static_cast<std::size_t>(it - dets_.begin());
}

bool DeterminantSpace::includes(const DeterminantSpace& other) const {
  return std::includes(dets_.begin(), dets_.end(), other.dets_.begin(), other.dets_.end());
}

std::uint64_t DeterminantSpace::checksum() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t w) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint64_t>(n_orbitals_));
  for (const auto& d : dets_) {
    mix(d.alpha.word(0));
    mix(d.beta.word(0));
  }
  return h;
}

void write_space(std::ostream& out, const DeterminantSpace& space) {
  for (const auto& d : space) out << to_string(d, space.n_orbitals()) << '\n';
}

DeterminantSpace read_space(std::istream& in) {
  std::vector<Determinant> dets;
  std::string line;
  std::size_t lineno = 0;
  int width = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string text = line.substr(b, e - b + 1);
    Determinant d;
    try {
      d = parse_determinant(text);
    } catch (const ContractViolation& err) {
      throw ParseError(err.what(), lineno);
    }
    const int w = static_cast<int>(text.find('|'));
    if (width < 0) width = w;
    if (w != width) throw ParseError("determinant width differs from first line", lineno);
    if (!dets.empty() && (d.alpha.popcount() != dets.front().alpha.popcount() ||
                          d.beta.popcount() != dets.front().beta.popcount()))
      throw ParseError("determinant outside the sector of the first line", lineno);
    dets.push_back(d);
  }
  if (dets.empty()) return {};
  const int na = dets.front().alpha.popcount();
  const int nb = dets.front().beta.popcount();
  return DeterminantSpace(std::move(dets), width, na, nb);
}

}  // namespace dqsci
