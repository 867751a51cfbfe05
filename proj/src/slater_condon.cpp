#include "dqsci/slater_condon.hpp"

#include "dqsci/error.hpp"

namespace dqsci {

namespace {

// Fermionic sign picked up by a_i (or a^+_a) acting on `s`; updates `s`.
inline int annihilate(SpinString& s, int i) noexcept {
  const int sign = (s.count_below(i) & 1) ? -1 : 1;
  s.reset(i);
  return sign;
}

inline int create(SpinString& s, int a) noexcept {
  const int sign = (s.count_below(a) & 1) ? -1 : 1;
  s.set(a);
  return sign;
}

inline int single_phase(SpinString s, int i, int a) noexcept {
  const int s1 = annihilate(s, i);
  return s1 * create(s, a);
}

// Phase of a^+_a a^+_b a_j a_i |s>.
inline int double_phase(SpinString s, int i, int j, int a, int b) noexcept {
  int sign = annihilate(s, i);
  sign *= annihilate(s, j);
  sign *= create(s, b);
  sign *= create(s, a);
  return sign;
}

double single_element(const SpinString& same, const SpinString& other, int i, int a,
                      const IntegralSet& ints) {
  double v = ints.h1(a, i);
  same.for_each_set([&](int j) { v += ints.eri(a, i, j, j) - ints.eri(a, j, j, i); });
  other.for_each_set([&](int j) { v += ints.eri(a, i, j, j); });
  return single_phase(same, i, a) * v;
}

}  // namespace

double diagonal_energy(const Determinant& d, const IntegralSet& ints) {
  double e = ints.core_energy();
  auto same_spin = [&](const SpinString& s) {
    s.for_each_set([&](int i) {
      e += ints.h1(i, i);
      s.for_each_set([&](int j) {
        if (j < i) e += ints.eri(i, i, j, j) - ints.eri(i, j, j, i);
      });
    });
  };
  same_spin(d.alpha);
  same_spin(d.beta);
  d.alpha.for_each_set([&](int i) { d.beta.for_each_set([&](int j) { e += ints.eri(i, i, j, j); }); });
  return e;
}

double slater_condon(const Determinant& bra, const Determinant& ket, const IntegralSet& ints) {
  const int degree = excitation_degree(bra, ket);
  if (degree > 2) return 0.0;
  if (degree == 0) return diagonal_energy(ket, ints);

  const SpinString holes_a = ket.alpha & (ket.alpha ^ bra.alpha);
  const SpinString parts_a = bra.alpha & (ket.alpha ^ bra.alpha);
  const SpinString holes_b = ket.beta & (ket.beta ^ bra.beta);
  const SpinString parts_b = bra.beta & (ket.beta ^ bra.beta);
  const int na = holes_a.popcount();

  if (degree == 1) {
    if (na == 1) return single_element(ket.alpha, ket.beta, holes_a.lowest(), parts_a.lowest(), ints);
    return single_element(ket.beta, ket.alpha, holes_b.lowest(), parts_b.lowest(), ints);
  }

  if (na == 1) {
    const int i = holes_a.lowest();
    const int a = parts_a.lowest();
    const int j = holes_b.lowest();
    const int b = parts_b.lowest();
    return single_phase(ket.alpha, i, a) * single_phase(ket.beta, j, b) * ints.eri(a, i, b, j);
  }

  const SpinString& s = na == 2 ? ket.alpha : ket.beta;
  SpinString holes = na == 2 ? holes_a : holes_b;
  SpinString parts = na == 2 ? parts_a : parts_b;
  const int i = holes.lowest();
  holes.reset(i);
  const int j = holes.lowest();
  const int a = parts.lowest();
  parts.reset(a);
  const int b = parts.lowest();
  return double_phase(s, i, j, a, b) * (ints.eri(a, i, b, j) - ints.eri(a, j, b, i));
}

}  // namespace dqsci
