#pragma once

// Sparse multivariate polynomials over Z_m.
//
// Monomials are exponent vectors, so x1^2 and x1 are different monomials.
// A Polynomial never stores a coefficient that is 0 mod m; equality of two
// polynomials is equality of their term maps.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modrep/modring.hpp"

namespace modrep {

using VarId = std::uint32_t;

class Monomial {
 public:
  using Power = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  // Zero exponents are dropped and repeated variables are merged.
  Monomial(std::initializer_list<Power> powers);
  explicit Monomial(std::vector<Power> powers);

  static Monomial variable(VarId v, std::uint32_t exponent = 1);

  bool is_constant() const noexcept { return powers_.empty(); }
  std::uint32_t degree() const noexcept;
  std::uint32_t exponent(VarId v) const noexcept;
  std::span<const Power> powers() const noexcept { return powers_; }
  std::vector<VarId> variables() const;

  Monomial operator*(const Monomial& rhs) const;

  bool operator==(const Monomial&) const = default;
  // Graded lexicographic: total degree first, then the exponent of the
  // lowest-numbered variable where the two differ (larger exponent sorts later).
  std::strong_ordering operator<=>(const Monomial& rhs) const noexcept;

 private:
  std::vector<Power> powers_;  // sorted by variable, exponents > 0
};

std::string to_string(const Monomial& mono);
std::ostream& operator<<(std::ostream& os, const Monomial& mono);

class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Polynomial(Modulus mod) : mod_(std::move(mod)) {}
  Polynomial(Modulus mod, std::initializer_list<std::pair<Monomial, Scalar>> terms);

  static Polynomial constant(const Modulus& mod, Scalar c);
  static Polynomial variable(const Modulus& mod, VarId v);

  const Modulus& modulus() const noexcept { return mod_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::uint32_t degree() const noexcept;
  std::set<VarId> variables() const;

  Residue coeff(const Monomial& mono) const;
  // Adds c to the coefficient of mono, keeping canonical form.
  void add_term(const Monomial& mono, Scalar c);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial scaled(Scalar c) const;

  bool operator==(const Polynomial& rhs) const noexcept {
    return mod_ == rhs.mod_ && terms_ == rhs.terms_;
  }

 private:
  void require_same(const Polynomial& rhs) const;

  Modulus mod_;
  Terms terms_;
};

using Assignment = std::map<VarId, Scalar>;

Residue poly_coeff(const Polynomial& p, const Monomial& mono);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
// Throws MissingVariable if a variable of p is not assigned.
Residue poly_eval(const Polynomial& p, const Assignment& assignment);

// Text form: terms joined by '+', each term "c*x<i>^<e>*...", constant "c",
// zero polynomial "0". Terms appear in ascending graded-lexicographic order.
std::string to_string(const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Accepts the text form plus omitted "^1", omitted '*', omitted coefficient
// and whitespace. Coefficients are reduced mod m. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, const Modulus& mod);

}  // namespace modrep
