#pragma once

// Symmetric weak-OR polynomials over a squarefree composite modulus.
//
// For each prime p with exponent a_p, the indicator
//   d_p(z) = 1 - prod_{s < a_p} (1 - S^{p^s}(z)^{p-1})   (mod p)
// is 1 exactly when one of the lowest a_p base-p digits of |z| is nonzero
// (Lucas: S^{p^s} at weight w is the s-th digit of w mod p). Combining the
// d_p with CRT units gives Q, which vanishes only at weights divisible by
// prod_p p^{a_p} and takes a selector value everywhere else.

#include <cstddef>
#include <vector>

#include "modrep/modring.hpp"
#include "modrep/polynomial.hpp"

namespace modrep {

struct ExponentPlan {
  Modulus modulus;
  std::size_t k = 0;
  std::vector<int> exponents;  // a_p, one per prime factor
  Scalar degree = 0;           // max_p (p^{a_p} - 1)

  // prod_p p^{a_p}; weights 1..coverage()-1 are detected.
  Scalar coverage() const;
};

// Smallest degree plan with coverage > k. For k >= 1 at least two primes get
// a positive exponent; ties go to the lexicographically smallest exponent
// vector. Throws InvalidModulus unless mod is squarefree with >= 2 primes.
ExponentPlan choose_exponents(std::size_t k, const Modulus& mod);

// A symmetric multilinear polynomial in z_1..z_k, stored on the elementary
// symmetric basis: sum_t c_t S^t(z).
class SymmetricPoly {
 public:
  SymmetricPoly(Modulus mod, std::size_t k, std::vector<Scalar> coefficients);

  const Modulus& modulus() const noexcept { return mod_; }
  std::size_t k() const noexcept { return k_; }
  // c_t for t = 0..size-1; entries beyond k are never stored.
  const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
  Scalar coefficient(std::size_t t) const { return t < coeffs_.size() ? coeffs_[t] : 0; }
  // Largest t with c_t != 0, or 0 for the zero polynomial.
  std::size_t degree() const noexcept;

  // Expanded multilinear form with z_l mapped to variable first_var + l - 1.
  // Throws std::length_error above max_terms monomials.
  Polynomial multilinear_form(VarId first_var = 1, std::size_t max_terms = 1u << 22) const;

 private:
  Modulus mod_;
  std::size_t k_;
  std::vector<Scalar> coeffs_;
};

struct WeakOrPoly {
  ExponentPlan plan;
  SymmetricPoly poly;
};

WeakOrPoly build_or_poly(std::size_t k, const Modulus& mod);

// V(w) for w = 0..k, computed per prime factor with Lucas binomials and
// CRT-combined. Requires a squarefree modulus.
std::vector<Scalar> weight_table(const SymmetricPoly& q);

// V(0) = 0 and every later entry is a selector value.
bool is_weak_or_table(const std::vector<Scalar>& table, const Modulus& mod);

}  // namespace modrep
