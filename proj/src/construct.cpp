#include "modrep/construct.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <tuple>

#include "modrep/errors.hpp"

namespace modrep {

IndexEncoding::IndexEncoding(Eigen::Index n_) : n(n_) {
  if (n < 1) throw DimensionMismatch("index encoding needs n >= 1");
  while ((Eigen::Index{1} << k) < n) ++k;
}

namespace {

auto template_key(const GateTemplate& g) {
  const std::uint64_t support = g.alpha | g.beta;
  return std::tuple(std::popcount(support), support, g.alpha, g.beta);
}

std::uint64_t exact_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace

std::vector<GateTemplate> xor_expansion(const SymmetricPoly& q) {
  const Modulus& mod = q.modulus();
  const auto k = static_cast<int>(q.k());
  if (k > 62) throw std::length_error("xor_expansion supports at most 62 code bits");
  const Scalar minus_two = mod.reduce(-2);

  std::vector<GateTemplate> out;
  const auto& coeffs = q.coefficients();
  for (std::size_t t = 1; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    // Gosper's hack over t-subsets of k bits.
    std::uint64_t subset = (std::uint64_t{1} << t) - 1;
    const std::uint64_t limit = std::uint64_t{1} << k;
    std::vector<int> positions(t);
    for (; subset < limit;) {
      int p = 0;
      for (int l = 0; l < k; ++l) {
        if (subset >> l & 1u) positions[static_cast<std::size_t>(p++)] = l;
      }
      // Each position picks u_l (0), v_l (1) or -2 u_l v_l (2).
      std::vector<int> choice(t, 0);
      for (;;) {
        GateTemplate g;
        Scalar c = coeffs[t];
        for (std::size_t s = 0; s < t; ++s) {
          const std::uint64_t bit = std::uint64_t{1} << positions[s];
          if (choice[s] != 1) g.alpha |= bit;
          if (choice[s] != 0) g.beta |= bit;
          if (choice[s] == 2) c = mod.mul(c, minus_two);
        }
        g.coefficient = c;
        if (c != 0) out.push_back(g);
        std::size_t s = 0;
        while (s < t && choice[s] == 2) choice[s++] = 0;
        if (s == t) break;
        ++choice[s];
      }
      const std::uint64_t low = subset & (~subset + 1);
      const std::uint64_t ripple = subset + low;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }
  if (!coeffs.empty() && coeffs[0] != 0) out.push_back({0, 0, coeffs[0]});

  std::sort(out.begin(), out.end(), [](const GateTemplate& a, const GateTemplate& b) {
    return template_key(a) < template_key(b);
  });
  // Distinct subsets never share (alpha, beta); merge anyway so the list is
  // canonical for any input.
  std::vector<GateTemplate> merged;
  for (const auto& g : out) {
    if (!merged.empty() && merged.back().alpha == g.alpha && merged.back().beta == g.beta) {
      merged.back().coefficient = mod.add(merged.back().coefficient, g.coefficient);
      if (merged.back().coefficient == 0) merged.pop_back();
    } else {
      merged.push_back(g);
    }
  }
  return merged;
}

std::uint64_t s2_gate_count_pow2(int k, const Modulus& mod) {
  const auto q = build_or_poly(static_cast<std::size_t>(k), mod).poly;
  const Scalar minus_two = mod.reduce(-2);
  std::uint64_t total = 0;
  const auto& coeffs = q.coefficients();
  for (std::size_t t = 1; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    // j positions take the -2 u v term, the other t - j pick u or v.
    std::uint64_t per_subset = 0;
    Scalar c = coeffs[t];
    for (std::size_t j = 0; j <= t; ++j, c = mod.mul(c, minus_two)) {
      if (c != 0) per_subset += exact_binom(t, j) << (t - j);
    }
    total += exact_binom(static_cast<std::uint64_t>(k), t) * per_subset;
  }
  return total;
}

BilinearCircuit build_s2_circuit(Eigen::Index n, const Modulus& mod) {
  const IndexEncoding enc(n);
  const auto q = build_or_poly(static_cast<std::size_t>(enc.k), mod).poly;
  BilinearCircuit c(mod, n);
  for (const auto& g : xor_expansion(q)) {
    LinearForm u(n), v(n);
    for (Eigen::Index i = 1; i <= n; ++i) {
      if ((enc.code(i) & g.alpha) == g.alpha) u.insertBack(i - 1) = g.coefficient;
      if ((enc.code(i) & g.beta) == g.beta) v.insertBack(i - 1) = 1;
    }
    // With n not a power of two some bit patterns select no index.
    if (u.nonZeros() == 0 || v.nonZeros() == 0) continue;
    c.add_gate({std::move(u), std::move(v)});
  }
  return c;
}

BilinearCircuit build_dot_circuit(Eigen::Index n, const Modulus& mod) {
  const BilinearCircuit s2 = build_s2_circuit(n, mod);
  BilinearCircuit c(mod, n);
  LinearForm ones(n);
  for (Eigen::Index i = 0; i < n; ++i) ones.insertBack(i) = 1;
  c.add_gate({ones, ones});
  for (const auto& g : s2.gates()) {
    LinearForm u = g.u;
    for (LinearForm::InnerIterator it(u); it; ++it) it.valueRef() = mod.neg(it.value());
    c.add_gate({std::move(u), g.v});
  }
  return c;
}

ResidueMatrix s2_target(Eigen::Index n) {
  return ResidueMatrix::Ones(n, n) - ResidueMatrix::Identity(n, n);
}

ResidueMatrix dot_target(Eigen::Index n) { return ResidueMatrix::Identity(n, n); }

S2Verification verify_s2_circuit(const BilinearCircuit& c) {
  const Modulus& mod = c.modulus();
  const ResidueMatrix m = circuit_expand(c);
  S2Verification out;
  out.verdict = check_bilinear(s2_target(c.n()), m, mod);
  out.symmetric = m == m.transpose();
  out.zero_diagonal = (m.diagonal().array() == 0).all();
  out.selector_off_diagonal = true;
  for (Eigen::Index i = 0; i < c.n() && out.selector_off_diagonal; ++i) {
    for (Eigen::Index j = 0; j < c.n(); ++j) {
      if (i != j && !is_selector_value(m(i, j), mod)) {
        out.selector_off_diagonal = false;
        break;
      }
    }
  }
  return out;
}

DotVerification verify_dot_circuit(const BilinearCircuit& c) {
  const ResidueMatrix h = circuit_expand(c);
  DotVerification out;
  out.verdict = check_bilinear(dot_target(c.n()), h, c.modulus());
  out.diagonal_exact = (h.diagonal().array() == 1).all();
  return out;
}

VerifiedDotCircuit certify_dot_circuit(BilinearCircuit c) {
  ResidueMatrix h = circuit_expand(c);
  const RepVerdict verdict = check_bilinear(dot_target(c.n()), h, c.modulus());
  if (!verdict.one_a_strong.holds) {
    const Witness& w = *verdict.one_a_strong.witness;
    std::ostringstream msg;
    msg << "circuit is not a 1-a-strong dot-product representation: coefficient of "
        << w.monomial << " is " << w.candidate_coeff << ", expected " << w.true_coeff;
    throw ContractViolation(msg.str());
  }
  if (!(h.diagonal().array() == 1).all()) {
    throw ContractViolation("dot-product circuit diagonal is not exactly 1");
  }
  return VerifiedDotCircuit(std::move(c), std::move(h));
}

ResidueMatrix matmul_rep(const ResidueMatrix& a, const ResidueMatrix& b,
                         const VerifiedDotCircuit& c, CostMeter& meter) {
  return matmul_rep_unchecked(a, b, c.circuit(), meter);
}

ResidueMatrix matmul_rep_unchecked(const ResidueMatrix& a, const ResidueMatrix& b,
                                   const BilinearCircuit& c, CostMeter& meter) {
  const Modulus& mod = c.modulus();
  const Eigen::Index n = c.n();
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n) {
    throw DimensionMismatch("matmul_rep over n=" + std::to_string(n) + " got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (!is_reduced(a, mod) || !is_reduced(b, mod)) {
    throw ModulusMismatch("matrix entries must lie in [0, " + std::to_string(mod.value()) + ")");
  }
  const auto gates = static_cast<Eigen::Index>(c.gate_count());
  // Column t of p is A u_t, column t of q is B^T v_t. Both are constant-scalar
  // combinations of the inputs.
  ResidueMatrix p = ResidueMatrix::Zero(n, gates);
  ResidueMatrix q = ResidueMatrix::Zero(n, gates);
  std::uint64_t scalar_terms = 0;
  for (Eigen::Index t = 0; t < gates; ++t) {
    const auto& gate = c.gates()[static_cast<std::size_t>(t)];
    auto pc = p.col(t);
    for (LinearForm::InnerIterator it(gate.u); it; ++it) {
      pc = reduced(pc + it.value() * a.col(it.index()), mod);
    }
    auto qc = q.col(t);
    for (LinearForm::InnerIterator it(gate.v); it; ++it) {
      qc = reduced(qc + it.value() * b.row(it.index()).transpose(), mod);
    }
    scalar_terms += static_cast<std::uint64_t>(gate.u.nonZeros() + gate.v.nonZeros());
  }
  const auto nn = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  meter.bilinear_mults += nn * static_cast<std::uint64_t>(gates);
  meter.free_ops += 2 * static_cast<std::uint64_t>(n) * scalar_terms;
  if (gates > 1) meter.free_ops += nn * static_cast<std::uint64_t>(gates - 1);
  return product_mod(p, q.transpose(), mod);
}

bool verify_matmul_probes(const BilinearCircuit& c) {
  const Modulus& mod = c.modulus();
  const Eigen::Index n = c.n();
  const ResidueMatrix h = circuit_expand(c);
  CostMeter meter;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      ResidueMatrix a = ResidueMatrix::Zero(n, n);
      ResidueMatrix b = ResidueMatrix::Zero(n, n);
      a(0, k) = 1;
      b(l, 0) = 1;
      const Scalar probe = matmul_rep_unchecked(a, b, c, meter)(0, 0);
      if (probe != h(k, l)) return false;
      if (!classify_coefficient(k == l ? 1 : 0, probe, mod).one_a_strong) return false;
    }
  }
  return true;
}

ResidueMatrix surplus_matrix(const BilinearCircuit& c) {
  const Modulus& mod = c.modulus();
  const auto check = verify_dot_circuit(c);
  if (!check.passed()) {
    throw PreconditionViolation("surplus_matrix needs a verified dot-product circuit");
  }
  const ResidueMatrix s = reduced(circuit_expand(c) - dot_target(c.n()), mod);
  for (Eigen::Index i = 0; i < c.n(); ++i) {
    if (s(i, i) != 0) throw ContractViolation("surplus on the diagonal");
    for (Eigen::Index j = 0; j < c.n(); ++j) {
      if (s(i, j) != 0 && zero_factor_set(s(i, j), mod).empty()) {
        throw ContractViolation("surplus coefficient is nonzero modulo every factor");
      }
    }
  }
  return s;
}

}  // namespace modrep
