#include "modrep/modring.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "modrep/errors.hpp"

namespace modrep {

Modulus::Modulus(Scalar m) : m_(m) {
  if (m < 2 || m > kMaxModulus) {
    throw InvalidModulus("modulus must lie in [2, " + std::to_string(kMaxModulus) +
                         "], got " + std::to_string(m));
  }
  Scalar rest = m;
  for (Scalar p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (rest % p == 0) {
      rest /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    factors_.push_back(pp);
  }
  if (rest > 1) factors_.push_back({rest, 1, rest});
}

bool Modulus::squarefree() const noexcept {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

Scalar Modulus::crt_unit(std::size_t i) const {
  const Scalar q = factor(i).value;
  const Scalar rest = m_ / q;
  return reduce(rest * inverse_mod(rest % q, q));
}

Modulus factorize(Scalar m) { return Modulus(m); }

std::ostream& operator<<(std::ostream& os, const Modulus& mod) {
  os << mod.value() << " = ";
  bool first = true;
  for (const auto& f : mod.factors()) {
    if (!first) os << " * ";
    first = false;
    os << f.prime;
    if (f.exponent > 1) os << '^' << f.exponent;
  }
  return os;
}

void Residue::require_same(const Residue& rhs) const {
  if (m_ != rhs.m_) {
    throw ModulusMismatch("residues modulo " + std::to_string(m_) + " and " +
                          std::to_string(rhs.m_));
  }
}

Residue Residue::operator+(const Residue& rhs) const {
  require_same(rhs);
  Scalar s = value_ + rhs.value_;
  return {s >= m_ ? s - m_ : s, m_, 0};
}

Residue Residue::operator-(const Residue& rhs) const {
  require_same(rhs);
  Scalar s = value_ - rhs.value_;
  return {s < 0 ? s + m_ : s, m_, 0};
}

Residue Residue::operator*(const Residue& rhs) const {
  require_same(rhs);
  return {(value_ * rhs.value_) % m_, m_, 0};
}

Residue Residue::operator-() const { return {value_ == 0 ? 0 : m_ - value_, m_, 0}; }

std::ostream& operator<<(std::ostream& os, const Residue& r) {
  return os << r.value() << " mod " << r.modulus();
}

ResidueVector crt_split(Scalar x, const Modulus& mod) {
  ResidueVector out;
  const Scalar v = mod.reduce(x);
  for (const auto& f : mod.factors()) {
    out.components.push_back(v % f.value);
    out.moduli.push_back(f.value);
  }
  return out;
}

ResidueVector crt_split(const Residue& x, const Modulus& mod) {
  if (x.modulus() != mod.value()) {
    throw ModulusMismatch("residue modulo " + std::to_string(x.modulus()) +
                          " split against modulus " + std::to_string(mod.value()));
  }
  return crt_split(x.value(), mod);
}

Residue crt_combine(const ResidueVector& v, const Modulus& mod) {
  const auto factors = mod.factors();
  if (v.components.size() != factors.size() || v.moduli.size() != factors.size()) {
    throw ModulusMismatch("residue vector has wrong number of components");
  }
  Scalar acc = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (v.moduli[i] != factors[i].value) {
      throw ModulusMismatch("component modulus " + std::to_string(v.moduli[i]) +
                            " does not match factor " + std::to_string(factors[i].value));
    }
    const Scalar vi = v.components[i] % factors[i].value;
    acc = mod.add(acc, mod.mul(vi < 0 ? vi + factors[i].value : vi, mod.crt_unit(i)));
  }
  return Residue(acc, mod);
}

Scalar inverse_mod(Scalar a, Scalar n) {
  Scalar r0 = n, r1 = ((a % n) + n) % n;
  Scalar s0 = 0, s1 = 1;
  while (r1 != 0) {
    const Scalar q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) {
    throw std::invalid_argument(std::to_string(a) + " is not invertible modulo " +
                                std::to_string(n));
  }
  return ((s0 % n) + n) % n;
}

namespace {

// C(a, b) mod p for 0 <= b <= a < p.
Scalar small_binom(Scalar a, Scalar b, Scalar p) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  Scalar num = 1, den = 1;
  for (Scalar i = 0; i < b; ++i) {
    num = num * ((a - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return num * inverse_mod(den, p) % p;
}

}  // namespace

Scalar binom_mod_prime(std::uint64_t w, std::uint64_t t, Scalar p) {
  const auto up = static_cast<std::uint64_t>(p);
  Scalar result = 1;
  while (t > 0 || w > 0) {
    const auto wd = static_cast<Scalar>(w % up);
    const auto td = static_cast<Scalar>(t % up);
    if (td > wd) return 0;
    result = result * small_binom(wd, td, p) % p;
    w /= up;
    t /= up;
  }
  return result % p;
}

std::vector<Scalar> selector_values(const Modulus& mod) {
  const std::size_t l = mod.factor_count();
  std::vector<Scalar> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << l); ++mask) {
    Scalar x = 0;
    for (std::size_t i = 0; i < l; ++i) {
      if (mask >> i & 1) x = mod.add(x, mod.crt_unit(i));
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_selector_value(Scalar x, const Modulus& mod) {
  const Scalar v = mod.reduce(x);
  bool some_one = false;
  for (const auto& f : mod.factors()) {
    const Scalar r = v % f.value;
    if (r > 1) return false;
    some_one = some_one || r == 1;
  }
  return some_one;
}

std::vector<std::size_t> zero_factor_set(Scalar x, const Modulus& mod) {
  std::vector<std::size_t> out;
  const Scalar v = mod.reduce(x);
  for (std::size_t i = 0; i < mod.factor_count(); ++i) {
    if (v % mod.factor(i).value == 0) out.push_back(i);
  }
  return out;
}

}  // namespace modrep
