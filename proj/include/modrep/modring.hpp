#pragma once

// Exact arithmetic over Z_m for small composite m, held together with its
// prime-power factorization.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace modrep {

using Scalar = std::int64_t;

// Largest accepted modulus. Keeps a product of two residues inside int64.
inline constexpr Scalar kMaxModulus = (Scalar{1} << 31) - 1;

struct PrimePower {
  Scalar prime = 0;
  int exponent = 0;
  Scalar value = 0;  // prime^exponent

  bool operator==(const PrimePower&) const = default;
};

class Modulus {
 public:
  // Throws InvalidModulus unless 2 <= m <= kMaxModulus.
  explicit Modulus(Scalar m);

  Scalar value() const noexcept { return m_; }
  std::span<const PrimePower> factors() const noexcept { return factors_; }
  std::size_t factor_count() const noexcept { return factors_.size(); }
  const PrimePower& factor(std::size_t i) const { return factors_.at(i); }
  bool squarefree() const noexcept;

  // Canonical representative in [0, m) of any integer.
  Scalar reduce(Scalar x) const noexcept {
    Scalar r = x % m_;
    return r < 0 ? r + m_ : r;
  }
  Scalar add(Scalar a, Scalar b) const noexcept { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const noexcept { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const noexcept { return reduce(reduce(a) * reduce(b)); }
  Scalar neg(Scalar a) const noexcept { return reduce(m_ - reduce(a)); }

  // CRT idempotent for factor i: 1 mod factor(i), 0 mod every other factor.
  Scalar crt_unit(std::size_t i) const;

  bool operator==(const Modulus& other) const noexcept { return m_ == other.m_; }

 private:
  Scalar m_;
  std::vector<PrimePower> factors_;
};

Modulus factorize(Scalar m);

std::ostream& operator<<(std::ostream& os, const Modulus& mod);

// An element of Z_m. Always reduced into [0, m).
class Residue {
 public:
  Residue(Scalar value, const Modulus& mod) : value_(mod.reduce(value)), m_(mod.value()) {}

  Scalar value() const noexcept { return value_; }
  Scalar modulus() const noexcept { return m_; }
  bool is_zero() const noexcept { return value_ == 0; }

  Residue operator+(const Residue& rhs) const;
  Residue operator-(const Residue& rhs) const;
  Residue operator*(const Residue& rhs) const;
  Residue operator-() const;

  bool operator==(const Residue&) const = default;
  // Comparing against a plain integer compares canonical values.
  bool operator==(Scalar v) const noexcept { return value_ == v; }

 private:
  Residue(Scalar value, Scalar m, int) : value_(value), m_(m) {}
  void require_same(const Residue& rhs) const;

  Scalar value_;
  Scalar m_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

// Per-factor view (v_1, ..., v_l) with v_i in [0, p_i^e_i).
struct ResidueVector {
  std::vector<Scalar> components;
  std::vector<Scalar> moduli;

  bool operator==(const ResidueVector&) const = default;
};

ResidueVector crt_split(const Residue& x, const Modulus& mod);
ResidueVector crt_split(Scalar x, const Modulus& mod);

// Throws ModulusMismatch when the component moduli differ from mod's factors.
Residue crt_combine(const ResidueVector& v, const Modulus& mod);

// C(w, t) mod p by Lucas' theorem. p must be prime.
Scalar binom_mod_prime(std::uint64_t w, std::uint64_t t, Scalar p);

// Inverse of a modulo n; requires gcd(a, n) = 1.
Scalar inverse_mod(Scalar a, Scalar n);

// Residues that are 0 or 1 modulo every prime-power factor and 1 modulo at
// least one. Sorted ascending; for m = 6 this is {1, 3, 4}.
std::vector<Scalar> selector_values(const Modulus& mod);
bool is_selector_value(Scalar x, const Modulus& mod);

// Indices of the factors p_i^e_i that divide x.
std::vector<std::size_t> zero_factor_set(Scalar x, const Modulus& mod);

}  // namespace modrep
