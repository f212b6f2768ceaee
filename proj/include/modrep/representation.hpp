#pragma once

// Deciding whether g represents f modulo a composite m, in the alternative,
// 0-a-strong and 1-a-strong senses, plus surplus bookkeeping and the sum and
// product compositions of 1-a-strong representations.
//
// Every notion is a per-coefficient condition. For one monomial with true
// coefficient a and candidate coefficient b, and factors q_1..q_l of m:
//   alternative   a = b mod q_j for some j
//   0-a-strong    alternative, and b = 0 mod q_i wherever a != b mod q_i
//   1-a-strong    alternative, and a = 0 mod m if a != b mod any q_i
// Monomials absent from a polynomial have coefficient 0.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modrep/dense.hpp"
#include "modrep/modring.hpp"
#include "modrep/polynomial.hpp"

namespace modrep {

enum class Notion { alternative, zero_a_strong, one_a_strong };

std::string to_string(Notion notion);

struct Witness {
  Monomial monomial;
  Scalar true_coeff = 0;       // a_I
  Scalar candidate_coeff = 0;  // b_I
  std::vector<bool> agrees;    // a_I = b_I mod factor i
};

struct CoefficientClass {
  bool alternative = true;
  bool zero_a_strong = true;
  bool one_a_strong = true;
  std::vector<bool> agrees;

  bool holds(Notion notion) const;
};

CoefficientClass classify_coefficient(Scalar a, Scalar b, const Modulus& mod);

struct NotionResult {
  bool holds = true;
  std::optional<Witness> witness;  // first failing monomial, when !holds

  explicit operator bool() const noexcept { return holds; }
};

struct RepVerdict {
  NotionResult alternative;
  NotionResult zero_a_strong;
  NotionResult one_a_strong;

  const NotionResult& get(Notion notion) const;
  bool all() const noexcept {
    return alternative.holds && zero_a_strong.holds && one_a_strong.holds;
  }
};

NotionResult check_alternative(const Polynomial& f, const Polynomial& g);
NotionResult check_0a_strong(const Polynomial& f, const Polynomial& g);
NotionResult check_1a_strong(const Polynomial& f, const Polynomial& g);
RepVerdict check_representation(const Polynomial& f, const Polynomial& g);

// Monomial x_{i+1} * x_{n+j+1} for zero-based (i, j): x-bank ids 1..n,
// y-bank ids n+1..2n.
Monomial bilinear_monomial(Eigen::Index n, Eigen::Index i, Eigen::Index j);

// Same checks for bilinear forms x^T truth y and x^T candidate y, given as
// square coefficient matrices.
RepVerdict check_bilinear(const ResidueMatrix& truth, const ResidueMatrix& candidate,
                          const Modulus& mod);

struct SurplusEntry {
  Scalar coefficient = 0;
  std::vector<std::size_t> zero_factors;  // factor indices i with coefficient = 0 mod q_i

  bool operator==(const SurplusEntry&) const = default;
};

class SurplusReport {
 public:
  using Entries = std::map<Monomial, SurplusEntry>;

  explicit SurplusReport(Modulus mod) : mod_(std::move(mod)) {}

  // Builds a report directly from surplus coefficients. Zero coefficients are
  // skipped.
  static SurplusReport from_coefficients(
      const Modulus& mod, std::initializer_list<std::pair<Monomial, Scalar>> coefficients);

  void insert(const Monomial& mono, Scalar coefficient);

  const Modulus& modulus() const noexcept { return mod_; }
  const Entries& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(const Monomial& mono) const { return entries_.count(mono) != 0; }

 private:
  Modulus mod_;
  Entries entries_;
};

// Monomials with f-coefficient 0 mod m and g-coefficient nonzero mod m.
SurplusReport surplus_of(const Polynomial& f, const Polynomial& g);

bool surpluses_disjoint(const SurplusReport& s, const SurplusReport& t);
// Every shared monomial vanishes modulo some common factor on both sides.
bool surpluses_compatible(const SurplusReport& s, const SurplusReport& t);

enum class Preconditions { unchecked, enforced };

struct Composition {
  Polynomial representation;
  RepVerdict verdict;  // full check of representation against the composed target
};

// g*g' as a representation of f*f'. With Preconditions::enforced, requires g
// and g' to be 1-a-strong representations of f and f' and the variables of
// {f, g} to be disjoint from those of {f', g'}; the verdict is then always
// 1-a-strong. Throws PreconditionViolation otherwise.
Composition rep_product(const Polynomial& f, const Polynomial& g, const Polynomial& f2,
                        const Polynomial& g2, Preconditions pre);

// g+g' as a representation of f+f'. With Preconditions::enforced, requires
// both inputs 1-a-strong, compatible surpluses (disjoint ones qualify), and
// that no surplus monomial of one side has a nonzero coefficient in the other
// side's target polynomial.
Composition rep_sum(const Polynomial& f, const Polynomial& g, const Polynomial& f2,
                    const Polynomial& g2, Preconditions pre);

}  // namespace modrep
