#include "dqsci/determinant.hpp"

#include "dqsci/error.hpp"

namespace dqsci {

int excitation_degree(const Determinant& a, const Determinant& b) {
  if (a.alpha.popcount() != b.alpha.popcount() || a.beta.popcount() != b.beta.popcount())
    throw ContractViolation("excitation degree between determinants of different sectors");
  return ((a.alpha ^ b.alpha).popcount() + (a.beta ^ b.beta).popcount()) / 2;
}

std::string to_string(const Determinant& d, int n_orbitals) {
  return d.alpha.to_string(n_orbitals) + "|" + d.beta.to_string(n_orbitals);
}

Determinant parse_determinant(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos)
    throw ContractViolation("determinant '" + std::string(text) + "' is not of the form a|b");
  const auto a = text.substr(0, bar);
  const auto b = text.substr(bar + 1);
  if (a.size() != b.size())
    throw ContractViolation("determinant '" + std::string(text) + "' has unequal halves");
  return {SpinString::from_string(a), SpinString::from_string(b)};
}

std::vector<SpinString> enumerate_strings(int n_bits, int n_set) {
  if (n_bits < 0 || n_bits > SpinString::kMaxBits)
    throw ContractViolation("orbital count outside [0, 64]");
  if (n_set < 0 || n_set > n_bits)
    throw ContractViolation("cannot place " + std::to_string(n_set) + " particles in " +
                            std::to_string(n_bits) + " orbitals");
  std::vector<SpinString> out;
  if (n_set == 0) {
    out.emplace_back();
    return out;
  }
  // Gosper's hack walks same-popcount integers in ascending order.
  std::uint64_t v = (n_set == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n_set) - 1;
  const std::uint64_t limit = n_bits == 64 ? 0 : std::uint64_t{1} << n_bits;
  while (true) {
    out.emplace_back(v);
    const std::uint64_t t = v | (v - 1);
    if (t == ~std::uint64_t{0}) break;
    const std::uint64_t next =
        (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
    if (next <= v || (limit && next >= limit)) break;
    v = next;
  }
  return out;
}

}  // namespace dqsci
