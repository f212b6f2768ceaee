#pragma once

// Dense matrices over Z_m on top of Eigen. Entries are canonical residues in
// [0, m); every helper returns reduced matrices.

#include <Eigen/Core>
#include <algorithm>
#include <string>

#include "modrep/errors.hpp"
#include "modrep/modring.hpp"

namespace modrep {

using ResidueMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using ResidueColumn = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
ResidueMatrix reduced(const Eigen::MatrixBase<Derived>& a, const Modulus& mod) {
  return a.derived().unaryExpr([&mod](Scalar x) { return mod.reduce(x); });
}

// Number of products of two residues that can be summed without overflow.
inline Eigen::Index safe_accumulation_depth(const Modulus& mod) {
  const Scalar top = mod.value() - 1;
  if (top <= 1) return Eigen::Index{1} << 40;
  return std::max<Eigen::Index>(1, static_cast<Eigen::Index>(
                                       (Scalar{1} << 62) / (top * top)));
}

// a * b over Z_m. Inputs must already be reduced. The inner dimension is
// split into chunks so partial sums stay inside int64.
template <typename DerivedA, typename DerivedB>
ResidueMatrix product_mod(const Eigen::MatrixBase<DerivedA>& a,
                          const Eigen::MatrixBase<DerivedB>& b, const Modulus& mod) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("cannot multiply " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " by " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  }
  const Eigen::Index depth = safe_accumulation_depth(mod);
  ResidueMatrix out = ResidueMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); k += depth) {
    const Eigen::Index len = std::min(depth, a.cols() - k);
    out += a.middleCols(k, len) * b.middleRows(k, len);
    out = reduced(out, mod);
  }
  return out;
}

// Schoolbook triple loop, kept as an independent baseline for tests.
inline ResidueMatrix naive_product_mod(const ResidueMatrix& a, const ResidueMatrix& b,
                                       const Modulus& mod) {
  if (a.cols() != b.rows()) throw DimensionMismatch("inner dimensions differ");
  ResidueMatrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Scalar acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = mod.add(acc, mod.mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  }
  return out;
}

template <typename Derived>
bool is_reduced(const Eigen::MatrixBase<Derived>& a, const Modulus& mod) {
  return (a.array() >= 0).all() && (a.array() < mod.value()).all();
}

}  // namespace modrep
