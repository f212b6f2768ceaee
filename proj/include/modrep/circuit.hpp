#pragma once

// Bilinear sum-of-products circuits over Z_m: every gate multiplies one linear
// form in x_1..x_n by one linear form in y_1..y_n, and the circuit outputs the
// sum of the gate products.
//
// Cost model: a bilinear multiplication is a product of two input-dependent
// values. Products by circuit constants and additions are free and are only
// tallied for reporting.

#include <Eigen/SparseCore>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modrep/dense.hpp"
#include "modrep/modring.hpp"
#include "modrep/polynomial.hpp"

namespace modrep {

// Zero-based internally; serialized 1-based.
using LinearForm = Eigen::SparseVector<Scalar>;

struct BilinearGate {
  LinearForm u;  // x-side coefficients; gate scalars are folded in here
  LinearForm v;  // y-side coefficients
};

bool operator==(const BilinearGate& a, const BilinearGate& b);

struct CostMeter {
  std::uint64_t bilinear_mults = 0;
  std::uint64_t free_ops = 0;

  CostMeter& operator+=(const CostMeter& rhs) {
    bilinear_mults += rhs.bilinear_mults;
    free_ops += rhs.free_ops;
    return *this;
  }
  friend CostMeter operator+(CostMeter a, const CostMeter& b) { return a += b; }
  bool operator==(const CostMeter&) const = default;
};

class BilinearCircuit {
 public:
  // Throws DimensionMismatch if n < 1.
  BilinearCircuit(Modulus mod, Eigen::Index n);

  // Validates and appends a gate: both forms have size n, reduced nonzero
  // coefficients, and at least one entry. Throws std::invalid_argument.
  void add_gate(BilinearGate gate);
  // Removes gate i (tests use this to build broken circuits).
  void remove_gate(std::size_t i);

  const Modulus& modulus() const noexcept { return mod_; }
  Eigen::Index n() const noexcept { return n_; }
  std::span<const BilinearGate> gates() const noexcept { return gates_; }
  std::size_t gate_count() const noexcept { return gates_.size(); }
  // Total stored coefficients over both sides of all gates.
  std::size_t nonzero_coefficients() const noexcept;

  bool operator==(const BilinearCircuit& rhs) const;

 private:
  Modulus mod_;
  Eigen::Index n_;
  std::vector<BilinearGate> gates_;
};

// Builds a linear form of size n from zero-based (index, coefficient) pairs,
// reducing coefficients and dropping zeros.
LinearForm make_form(Eigen::Index n, std::span<const std::pair<Eigen::Index, Scalar>> entries,
                     const Modulus& mod);

// sum_t (u_t . x)(v_t . y) mod m. Adds gate_count() to meter.bilinear_mults.
Residue circuit_eval(const BilinearCircuit& c, const ResidueColumn& x, const ResidueColumn& y,
                     CostMeter& meter);

// M = sum_t u_t v_t^T mod m, so that circuit_eval(x, y) = x^T M y.
ResidueMatrix circuit_expand(const BilinearCircuit& c);

std::size_t circuit_gate_count(const BilinearCircuit& c);

// sum_ij M[i][j] x_{i+1} x_{n+j+1} (see bilinear_monomial).
Polynomial bilinear_polynomial(const ResidueMatrix& m, const Modulus& mod);

// Text document {"version":1,"m":..,"n":..,"gates":[{"u":[[i,c],..],"v":[[i,c],..]},..]}
// with 1-based ascending indices, one gate per line. Byte-deterministic.
std::string serialize(const BilinearCircuit& c);
// Throws ParseError with a byte offset or a field path.
BilinearCircuit deserialize(std::string_view text);

// Comma-separated rows of integers in [0, m), one row per line.
std::string matrix_to_csv(const ResidueMatrix& a);
// Throws ParseError on malformed rows, ragged rows, or out-of-range entries.
ResidueMatrix matrix_from_csv(std::string_view text, const Modulus& mod);

}  // namespace modrep
