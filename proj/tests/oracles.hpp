#pragma once

// Slow reference computations shared by the unit tests and the acceptance run.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "modrep/dense.hpp"
#include "modrep/orpoly.hpp"
#include "modrep/polynomial.hpp"

namespace modrep::test {

// Caps every exponent at 1 (inputs are 0/1).
inline Polynomial multilinear(const Polynomial& p) {
  Polynomial out(p.modulus());
  for (const auto& [mono, c] : p.terms()) {
    std::vector<Monomial::Power> powers;
    for (const auto& [v, e] : mono.powers()) powers.emplace_back(v, 1);
    out.add_term(Monomial(std::move(powers)), c);
  }
  return out;
}

using TemplateMap = std::map<std::pair<std::uint64_t, std::uint64_t>, Scalar>;

// Q(u XOR v) expanded with plain polynomial arithmetic, u_l = var l+1 and
// v_l = var k+l+1, returned as (alpha, beta) -> coefficient.
inline TemplateMap symbolic_templates(std::size_t k, const Modulus& mod) {
  const auto form = build_or_poly(k, mod).poly.multilinear_form();
  std::vector<Polynomial> z;
  for (std::size_t l = 0; l < k; ++l) {
    const auto u = Polynomial::variable(mod, static_cast<VarId>(l + 1));
    const auto v = Polynomial::variable(mod, static_cast<VarId>(k + l + 1));
    z.push_back(u + v - (u * v).scaled(2));
  }
  Polynomial total(mod);
  for (const auto& [mono, c] : form.terms()) {
    Polynomial term = Polynomial::constant(mod, c);
    for (const auto& [var, e] : mono.powers()) term = multilinear(term * z[var - 1]);
    total = total + term;
  }
  TemplateMap out;
  for (const auto& [mono, c] : total.terms()) {
    std::uint64_t alpha = 0, beta = 0;
    for (const auto& [var, e] : mono.powers()) {
      if (var <= k) alpha |= std::uint64_t{1} << (var - 1);
      else beta |= std::uint64_t{1} << (var - k - 1);
    }
    out[{alpha, beta}] = c;
  }
  return out;
}

// x^T H y by explicit double sum.
inline Scalar bilinear_value(const ResidueMatrix& h, const ResidueColumn& x, const ResidueColumn& y,
                             const Modulus& mod) {
  Scalar acc = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j)
      acc = mod.add(acc, mod.mul(mod.mul(x(i), h(i, j)), y(j)));
  return acc;
}

// row_i(A) H col_j(B) for every (i, j), one entry at a time.
inline ResidueMatrix entrywise_bilinear(const ResidueMatrix& a, const ResidueMatrix& h,
                                        const ResidueMatrix& b, const Modulus& mod) {
  const Eigen::Index n = a.rows();
  ResidueMatrix out(n, n);
  std::vector<Scalar> w(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      Scalar inner = 0;
      for (Eigen::Index l = 0; l < n; ++l) inner = mod.add(inner, mod.mul(h(k, l), b(l, j)));
      w[static_cast<std::size_t>(k)] = inner;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar acc = 0;
      for (Eigen::Index k = 0; k < n; ++k)
        acc = mod.add(acc, mod.mul(a(i, k), w[static_cast<std::size_t>(k)]));
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace modrep::test
