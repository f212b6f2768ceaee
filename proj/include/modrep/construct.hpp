#pragma once

// The three constructions:
//   build_s2_circuit   0-a-strong representation of S_n^2(x, y) = sum_{i != j} x_i y_j
//   build_dot_circuit  1-a-strong representation of the dot product,
//                      h = (sum x)(sum y) - s2
//   matmul_rep         n^2 applications of a dot-product circuit, sharing the
//                      per-gate linear forms across rows and columns
//
// Indices i in [1, n] are encoded as the k = ceil(log2 n) bits of i - 1. The
// S^2 circuit evaluates the weak-OR polynomial Q on the XOR of the two codes,
// so its coefficient M[i][j] is Q's weight table at the Hamming distance of
// the codes: 0 on the diagonal and a selector value elsewhere.

#include <cstdint>
#include <vector>

#include "modrep/circuit.hpp"
#include "modrep/dense.hpp"
#include "modrep/orpoly.hpp"
#include "modrep/representation.hpp"

namespace modrep {

struct IndexEncoding {
  Eigen::Index n = 1;
  int k = 0;  // ceil(log2 n)

  explicit IndexEncoding(Eigen::Index n);
  // Code of the 1-based index i: the bits of i - 1.
  std::uint64_t code(Eigen::Index i) const noexcept { return static_cast<std::uint64_t>(i - 1); }
  int bit(Eigen::Index i, int l) const noexcept { return static_cast<int>(code(i) >> l & 1u); }
};

// One gate before materialization: coefficient * u^alpha * v^beta, where u and
// v are the code bits of the x-index and y-index.
struct GateTemplate {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  Scalar coefficient = 0;

  bool operator==(const GateTemplate&) const = default;
};

// Expands Q(u XOR v) with z_l = u_l + v_l - 2 u_l v_l. Templates with zero
// coefficient are dropped; order is (|alpha|beta|, alpha|beta, alpha, beta).
std::vector<GateTemplate> xor_expansion(const SymmetricPoly& q);

// Gate count of build_s2_circuit for n = 2^k, without materializing gates.
std::uint64_t s2_gate_count_pow2(int k, const Modulus& mod);

// Throws InvalidModulus unless mod is squarefree with >= 2 primes, and
// DimensionMismatch if n < 1.
BilinearCircuit build_s2_circuit(Eigen::Index n, const Modulus& mod);
BilinearCircuit build_dot_circuit(Eigen::Index n, const Modulus& mod);

// J - I and I: the coefficient matrices of S_n^2 and of the dot product.
ResidueMatrix s2_target(Eigen::Index n);
ResidueMatrix dot_target(Eigen::Index n);

struct S2Verification {
  RepVerdict verdict;  // against S_n^2
  bool symmetric = false;
  bool zero_diagonal = false;
  bool selector_off_diagonal = false;

  bool passed() const noexcept {
    return verdict.zero_a_strong.holds && symmetric && zero_diagonal && selector_off_diagonal;
  }
};

struct DotVerification {
  RepVerdict verdict;  // against the dot product
  bool diagonal_exact = false;

  bool passed() const noexcept { return verdict.one_a_strong.holds && diagonal_exact; }
};

S2Verification verify_s2_circuit(const BilinearCircuit& c);
DotVerification verify_dot_circuit(const BilinearCircuit& c);

// A dot-product circuit whose expansion has been checked. Only
// certify_dot_circuit creates one.
class VerifiedDotCircuit {
 public:
  const BilinearCircuit& circuit() const noexcept { return circuit_; }
  const ResidueMatrix& expanded() const noexcept { return expanded_; }

 private:
  friend VerifiedDotCircuit certify_dot_circuit(BilinearCircuit c);
  VerifiedDotCircuit(BilinearCircuit c, ResidueMatrix h)
      : circuit_(std::move(c)), expanded_(std::move(h)) {}

  BilinearCircuit circuit_;
  ResidueMatrix expanded_;
};

// Throws ContractViolation naming the failing witness.
VerifiedDotCircuit certify_dot_circuit(BilinearCircuit c);

// C[i][j] = sum_t (u_t . row_i(A)) (v_t . col_j(B)) mod m. Adds
// n^2 * gate_count to meter.bilinear_mults. A and B must be reduced n x n.
ResidueMatrix matmul_rep(const ResidueMatrix& a, const ResidueMatrix& b,
                         const VerifiedDotCircuit& c, CostMeter& meter);
ResidueMatrix matmul_rep_unchecked(const ResidueMatrix& a, const ResidueMatrix& b,
                                   const BilinearCircuit& c, CostMeter& meter);

// For every (k, l): A = e_1 e_k^T, B = e_l e_1^T. The probe C[1][1] must equal
// the expanded coefficient H[k][l] and be a 1-a-strong representation of
// delta_kl.
bool verify_matmul_probes(const BilinearCircuit& c);

// H - I for a verified dot circuit. Throws PreconditionViolation if the
// circuit does not verify, ContractViolation if an invariant fails.
ResidueMatrix surplus_matrix(const BilinearCircuit& c);

}  // namespace modrep
