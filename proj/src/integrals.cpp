#include "dqsci/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "dqsci/error.hpp"

namespace dqsci {

IntegralSet::IntegralSet(int n_orbitals, int n_alpha, int n_beta)
    : n_orbitals_(n_orbitals), n_alpha_(n_alpha), n_beta_(n_beta) {
  require(n_orbitals >= 0, "negative orbital count");
  require(n_alpha >= 0 && n_beta >= 0, "negative electron count");
  require(n_alpha <= n_orbitals && n_beta <= n_orbitals,
          "more electrons of one spin than orbitals");
  h1_ = Eigen::MatrixXd::Zero(n_orbitals, n_orbitals);
  const std::size_t npair = pair_index(n_orbitals, 0);
  eri_.assign(npair * (npair + 1) / 2, 0.0);
}

void IntegralSet::check_index(int p) const {
  if (p < 0 || p >= n_orbitals_)
    throw ContractViolation("orbital index " + std::to_string(p) + " outside [0, " +
                            std::to_string(n_orbitals_) + ")");
}

double IntegralSet::h1(int p, int q) const {
  check_index(p);
  check_index(q);
  return h1_(p, q);
}

void IntegralSet::set_h1(int p, int q, double value) {
  check_index(p);
  check_index(q);
  h1_(p, q) = value;
  h1_(q, p) = value;
}

double IntegralSet::eri(int p, int q, int r, int s) const {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  return eri_[eri_index(p, q, r, s)];
}

void IntegralSet::set_eri(int p, int q, int r, int s, double value) {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  eri_[eri_index(p, q, r, s)] = value;
}

IntegralSet one_body_part(const IntegralSet& ints) {
  IntegralSet out(ints.n_orbitals(), ints.n_alpha(), ints.n_beta());
  out.set_core_energy(ints.core_energy());
  for (int p = 0; p < ints.n_orbitals(); ++p)
    for (int q = 0; q <= p; ++q) out.set_h1(p, q, ints.h1(p, q));
  return out;
}

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool is_header_end(const std::string& line) {
  std::string t = upper(line);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }),
          t.end());
  return t == "/" || t == "&END" || t == "$END" || t == "&" ||
         (t.size() > 1 && (t.ends_with("&END") || t.ends_with("/")));
}

// Key/value pairs of the namelist header; list-valued keys keep the raw text.
std::map<std::string, std::string> split_namelist(const std::string& text, std::size_t line) {
  std::map<std::string, std::string> out;
  std::string body = text;
  for (const char* tag : {"&FCI", "$FCI", "&END", "$END"}) {
    for (auto pos = upper(body).find(tag); pos != std::string::npos;
         pos = upper(body).find(tag))
      body.replace(pos, std::char_traits<char>::length(tag), " ");
  }
  std::replace(body.begin(), body.end(), '/', ' ');

  std::string key;
  std::string value;
  auto flush = [&] {
    if (!key.empty()) out[upper(key)] = value;
    key.clear();
    value.clear();
  };
  std::size_t i = 0;
  while (i < body.size()) {
    const auto eq = body.find('=', i);
    if (eq == std::string::npos) {
      std::string rest = body.substr(i);
      if (!key.empty()) value += rest;
      else if (rest.find_first_not_of(" \t\r\n,") != std::string::npos)
        throw ParseError("malformed FCIDUMP header near '" + rest + "'", line);
      break;
    }
    // The key is the last identifier before '='; anything before it belongs to
    // the previous value.
    std::size_t kend = eq;
    while (kend > i && std::isspace(static_cast<unsigned char>(body[kend - 1]))) --kend;
    std::size_t kbeg = kend;
    while (kbeg > i && (std::isalnum(static_cast<unsigned char>(body[kbeg - 1])) ||
                        body[kbeg - 1] == '_'))
      --kbeg;
    if (kbeg == kend) throw ParseError("malformed FCIDUMP header: '=' without a key", line);
    value += body.substr(i, kbeg - i);
    flush();
    key = body.substr(kbeg, kend - kbeg);
    i = eq + 1;
  }
  flush();
  for (auto& [k, v] : out) {
    std::replace(v.begin(), v.end(), ',', ' ');
    const auto b = v.find_first_not_of(" \t\r\n");
    const auto e = v.find_last_not_of(" \t\r\n");
    v = b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  }
  return out;
}

int header_int(const std::map<std::string, std::string>& kv, const std::string& key,
               std::optional<int> fallback, std::size_t line) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw ParseError("FCIDUMP header is missing " + key, line);
  }
  int value = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("FCIDUMP header field " + key + " is not an integer: '" + s + "'", line);
  return value;
}

double parse_value(std::string token, std::size_t line) {
  std::replace(token.begin(), token.end(), 'D', 'E');
  std::replace(token.begin(), token.end(), 'd', 'e');
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("non-numeric integral value '" + token + "'", line);
  return v;
}

int parse_index(const std::string& token, int n_orbitals, std::size_t line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("non-integer orbital index '" + token + "'", line);
  if (v < 0 || v > n_orbitals)
    throw ParseError("orbital index " + token + " out of range [0, " +
                         std::to_string(n_orbitals) + "]",
                     line);
  return v;
}

}  // namespace

IntegralSet parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  std::size_t lineno = 0;
  std::size_t header_start = 0;
  bool header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (header.empty() && line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (header.empty()) {
      header_start = lineno;
      if (upper(line).find("FCI") == std::string::npos)
        throw ParseError("FCIDUMP must start with an &FCI namelist", lineno);
    }
    header += line + "\n";
    if (is_header_end(line)) {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw ParseError("unterminated FCIDUMP header", header_start ? lineno : 0);

  const auto kv = split_namelist(header, header_start);
  const int norb = header_int(kv, "NORB", std::nullopt, header_start);
  const int nelec = header_int(kv, "NELEC", std::nullopt, header_start);
  const int ms2 = header_int(kv, "MS2", 0, header_start);
  if (auto it = kv.find("UHF"); it != kv.end()) {
    const auto v = upper(it->second);
    if (v.find('T') != std::string::npos || v == "1")
      throw ParseError("unrestricted FCIDUMP files are not supported", header_start);
  }
  if (norb < 0 || nelec < 0) throw ParseError("negative NORB or NELEC", header_start);
  if ((nelec + ms2) % 2 != 0 || std::abs(ms2) > nelec)
    throw ParseError("inconsistent NELEC/MS2", header_start);
  const int n_alpha = (nelec + ms2) / 2;
  const int n_beta = (nelec - ms2) / 2;
  if (n_alpha > norb || n_beta > norb)
    throw ParseError("more electrons of one spin than orbitals", header_start);

  IntegralSet ints(norb, n_alpha, n_beta);
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok[6];
    int n = 0;
    while (n < 6 && ls >> tok[n]) ++n;
    if (n == 0) continue;
    if (n != 5) throw ParseError("expected 'value p q r s', got " + std::to_string(n) + " fields",
                                 lineno);
    const double v = parse_value(tok[0], lineno);
    const int p = parse_index(tok[1], norb, lineno);
    const int q = parse_index(tok[2], norb, lineno);
    const int r = parse_index(tok[3], norb, lineno);
    const int s = parse_index(tok[4], norb, lineno);
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      ints.set_core_energy(v);
    } else if (p > 0 && q > 0 && r > 0 && s > 0) {
      ints.set_eri(p - 1, q - 1, r - 1, s - 1, v);
    } else if (p > 0 && q > 0 && r == 0 && s == 0) {
      ints.set_h1(p - 1, q - 1, v);
    } else if (p > 0 && q == 0 && r == 0 && s == 0) {
      // orbital energy record; carries no Hamiltonian information
    } else {
      throw ParseError("invalid index pattern " + tok[1] + " " + tok[2] + " " + tok[3] + " " +
                           tok[4],
                       lineno);
    }
  }
  return ints;
}

IntegralSet read_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP file " + path.string(), 0);
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const IntegralSet& ints) {
  const int n = ints.n_orbitals();
  out << " &FCI NORB=" << n << ",NELEC=" << ints.n_alpha() + ints.n_beta()
      << ",MS2=" << ints.n_alpha() - ints.n_beta() << ",\n  ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  out << std::setprecision(17) << std::scientific;
  auto rec = [&](double v, int p, int q, int r, int s) {
    out << std::setw(25) << v << ' ' << std::setw(4) << p << ' ' << std::setw(4) << q << ' '
        << std::setw(4) << r << ' ' << std::setw(4) << s << '\n';
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (IntegralSet::pair_index(p, q) < IntegralSet::pair_index(r, s)) continue;
          const double v = ints.eri(p, q, r, s);
          if (v != 0.0) rec(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (ints.h1(p, q) != 0.0) rec(ints.h1(p, q), p + 1, q + 1, 0, 0);
  rec(ints.core_energy(), 0, 0, 0, 0);
}

}  // namespace dqsci
