#include "doctest.h"

#include <map>

#include "modrep/construct.hpp"
#include "modrep/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace modrep;

namespace {

int popcount(std::uint64_t x) {
  int c = 0;
  for (; x; x &= x - 1) ++c;
  return c;
}

std::uint64_t binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

ResidueMatrix random_matrix(std::mt19937_64& rng, Eigen::Index n, const Modulus& mod) {
  ResidueMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = test::draw(rng, 0, mod.value() - 1);
  return a;
}

const std::vector<Scalar> kModuli{6, 10, 15, 30};

}  // namespace

TEST_CASE("index encoding") {
  CHECK(IndexEncoding(1).k == 0);
  CHECK(IndexEncoding(2).k == 1);
  CHECK(IndexEncoding(4).k == 2);
  CHECK(IndexEncoding(5).k == 3);
  CHECK(IndexEncoding(1024).k == 10);
  const IndexEncoding e(8);
  CHECK(e.code(1) == 0);
  CHECK(e.code(6) == 5);
  CHECK(e.bit(6, 0) == 1);
  CHECK(e.bit(6, 1) == 0);
  CHECK(e.bit(6, 2) == 1);
  CHECK_THROWS_AS(IndexEncoding(0), DimensionMismatch);
}

TEST_CASE("xor expansion agrees with symbolic substitution") {
  for (Scalar m : {6, 10, 15, 30, 42}) {
    const Modulus mod(m);
    for (std::size_t k = 0; k <= 6; ++k) {
      const auto expect = test::symbolic_templates(k, mod);
      const auto got = xor_expansion(build_or_poly(k, mod).poly);
      std::map<std::pair<std::uint64_t, std::uint64_t>, Scalar> got_map;
      for (const auto& t : got) got_map[{t.alpha, t.beta}] = t.coefficient;
      CHECK(got.size() == got_map.size());
      CHECK(got_map == expect);
      CHECK(s2_gate_count_pow2(static_cast<int>(k), mod) == expect.size());
    }
  }
}

TEST_CASE("S2 circuit examples") {
  const Modulus six(6);
  const auto s2 = build_s2_circuit(2, six);
  CHECK(s2.gate_count() == 3);
  ResidueMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(circuit_expand(s2) == swap);

  const auto s4 = build_s2_circuit(4, six);
  CHECK(s4.gate_count() == 15);
  const ResidueMatrix m4 = circuit_expand(s4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const int dist = popcount(static_cast<std::uint64_t>(i ^ j));
      CHECK(m4(i, j) == (dist == 0 ? 0 : dist == 1 ? 1 : 4));
    }
  }

  for (Scalar m : kModuli) {
    const auto one = build_s2_circuit(1, Modulus(m));
    CHECK(one.gate_count() == 0);
    CHECK(verify_s2_circuit(one).passed());
  }
  CHECK_THROWS_AS(build_s2_circuit(4, Modulus(12)), InvalidModulus);
  CHECK_THROWS_AS(build_s2_circuit(4, Modulus(5)), InvalidModulus);
  CHECK_THROWS_AS(build_s2_circuit(0, six), DimensionMismatch);
}

TEST_CASE("dot circuit examples") {
  const Modulus six(6);
  const auto d2 = build_dot_circuit(2, six);
  CHECK(d2.gate_count() == 4);
  CHECK(circuit_expand(d2) == ResidueMatrix::Identity(2, 2));

  const auto d4 = build_dot_circuit(4, six);
  CHECK(d4.gate_count() == 16);
  const ResidueMatrix h4 = circuit_expand(d4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const int dist = popcount(static_cast<std::uint64_t>(i ^ j));
      CHECK(h4(i, j) == (dist == 0 ? 1 : dist == 1 ? 0 : 3));
    }
  }

  const auto d1 = build_dot_circuit(1, six);
  CHECK(d1.gate_count() == 1);
  CHECK(circuit_expand(d1) == ResidueMatrix::Identity(1, 1));
  CHECK(verify_dot_circuit(d1).passed());
}

TEST_CASE("verify_dot_circuit rejects non-representations") {
  const Modulus six(6);
  for (Eigen::Index n : {2, 3, 8}) {
    BilinearCircuit ones(six, n);
    std::vector<std::pair<Eigen::Index, Scalar>> all;
    for (Eigen::Index i = 0; i < n; ++i) all.emplace_back(i, 1);
    ones.add_gate({make_form(n, all, six), make_form(n, all, six)});
    const auto v = verify_dot_circuit(ones);
    CHECK_FALSE(v.passed());
    CHECK_FALSE(v.verdict.alternative.holds);
    REQUIRE(v.verdict.alternative.witness.has_value());
    CHECK(v.verdict.alternative.witness->true_coeff == 0);
    CHECK(v.verdict.alternative.witness->candidate_coeff == 1);

    CHECK_FALSE(verify_dot_circuit(BilinearCircuit(six, n)).passed());
  }
  BilinearCircuit single(six, 1);
  single.add_gate({make_form(1, std::vector<std::pair<Eigen::Index, Scalar>>{{0, 1}}, six),
                   make_form(1, std::vector<std::pair<Eigen::Index, Scalar>>{{0, 1}}, six)});
  CHECK(verify_dot_circuit(single).passed());
}

TEST_CASE("constructions verify across moduli and sizes") {
  for (Scalar m : kModuli) {
    const Modulus mod(m);
    for (Eigen::Index n = 1; n <= 40; ++n) {
      const auto s2 = build_s2_circuit(n, mod);
      const auto dot = build_dot_circuit(n, mod);
      const auto sv = verify_s2_circuit(s2);
      CHECK(sv.passed());
      CHECK(sv.verdict.alternative.holds);
      const auto dv = verify_dot_circuit(dot);
      CHECK(dv.passed());
      CHECK(dv.diagonal_exact);
      CHECK(dot.gate_count() == s2.gate_count() + 1);
    }
  }
}

TEST_CASE("S2 coefficients are the weight table at the Hamming distance") {
  for (Scalar m : kModuli) {
    const Modulus mod(m);
    for (Eigen::Index n : {3, 8, 13, 32}) {
      const IndexEncoding enc(n);
      const auto table = weight_table(build_or_poly(static_cast<std::size_t>(enc.k), mod).poly);
      const ResidueMatrix mm = circuit_expand(build_s2_circuit(n, mod));
      for (Eigen::Index i = 1; i <= n; ++i)
        for (Eigen::Index j = 1; j <= n; ++j)
          CHECK(mm(i - 1, j - 1) == table[popcount(enc.code(i) ^ enc.code(j))]);
    }
  }
}

TEST_CASE("closed-form gate count matches materialized circuits and the bound") {
  for (Scalar m : kModuli) {
    const Modulus mod(m);
    for (int k = 0; k <= 8; ++k) {
      CHECK(build_s2_circuit(Eigen::Index{1} << k, mod).gate_count() == s2_gate_count_pow2(k, mod));
    }
    for (int k = 0; k <= 16; ++k) {
      const auto d = choose_exponents(static_cast<std::size_t>(k), mod).degree;
      std::uint64_t bound = 0, pow3 = 1;
      for (int t = 0; t <= d && t <= k; ++t, pow3 *= 3) bound += binom(k, t) * pow3;
      CHECK(s2_gate_count_pow2(k, mod) <= bound);
    }
  }
  // Non-powers of two drop gates that select no index.
  const Modulus six(6);
  for (Eigen::Index n = 2; n <= 64; ++n) {
    const int k = IndexEncoding(n).k;
    CHECK(build_s2_circuit(n, six).gate_count() <= s2_gate_count_pow2(k, six));
    CHECK(build_s2_circuit(n, six).gate_count() >= build_s2_circuit(n - 1, six).gate_count());
  }
}

TEST_CASE("matmul_rep examples") {
  const Modulus six(6);
  {
    const auto c = certify_dot_circuit(build_dot_circuit(1, six));
    ResidueMatrix a(1, 1), b(1, 1);
    a << 2;
    b << 3;
    CostMeter meter;
    CHECK(matmul_rep(a, b, c, meter)(0, 0) == 0);
    CHECK(meter.bilinear_mults == 1);
    a << 5;
    CHECK(matmul_rep(a, b, c, meter)(0, 0) == 3);
  }
  {
    const auto c = certify_dot_circuit(build_dot_circuit(2, six));
    CostMeter meter;
    CHECK(matmul_rep(ResidueMatrix::Identity(2, 2), ResidueMatrix::Identity(2, 2), c, meter) ==
          ResidueMatrix::Identity(2, 2));
    CHECK(meter.bilinear_mults == 16);
  }
  {
    const auto c = certify_dot_circuit(build_dot_circuit(4, six));
    CostMeter meter;
    const ResidueMatrix out =
        matmul_rep(ResidueMatrix::Identity(4, 4), ResidueMatrix::Identity(4, 4), c, meter);
    CHECK(out == c.expanded());
    CHECK(out != ResidueMatrix::Identity(4, 4));
    CHECK(meter.bilinear_mults == 256);
  }
}

TEST_CASE("matmul_rep rejects bad inputs") {
  const Modulus six(6);
  const auto c = certify_dot_circuit(build_dot_circuit(4, six));
  CostMeter meter;
  CHECK_THROWS_AS(matmul_rep(ResidueMatrix::Identity(3, 3), ResidueMatrix::Identity(4, 4), c, meter),
                  DimensionMismatch);
  ResidueMatrix big = ResidueMatrix::Identity(4, 4);
  big(0, 1) = 6;
  CHECK_THROWS_AS(matmul_rep(big, ResidueMatrix::Identity(4, 4), c, meter), ModulusMismatch);

  BilinearCircuit broken = build_dot_circuit(4, six);
  broken.remove_gate(3);
  CHECK_THROWS_AS(certify_dot_circuit(broken), ContractViolation);
  // The unchecked path still computes what the circuit says.
  CostMeter raw;
  CHECK(matmul_rep_unchecked(ResidueMatrix::Identity(4, 4), ResidueMatrix::Identity(4, 4), broken, raw) ==
        circuit_expand(broken));
  CHECK(raw.bilinear_mults == 16 * broken.gate_count());
}

TEST_CASE("matmul_rep equals A H B and the meter identity") {
  auto rng = test::make_rng(53);
  for (Scalar m : kModuli) {
    const Modulus mod(m);
    for (Eigen::Index n : {1, 2, 3, 4, 7, 8, 16}) {
      const auto c = certify_dot_circuit(build_dot_circuit(n, mod));
      const ResidueMatrix& h = c.expanded();
      for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_matrix(rng, n, mod);
        const auto b = random_matrix(rng, n, mod);
        CostMeter meter;
        const ResidueMatrix out = matmul_rep(a, b, c, meter);
        CHECK(out == naive_product_mod(naive_product_mod(a, h, mod), b, mod));
        CHECK(meter.bilinear_mults ==
              static_cast<std::uint64_t>(n * n) * c.circuit().gate_count());
        // C = AB + A (H - I) B: the surplus part vanishes mod some factor per term.
        const ResidueMatrix s = surplus_matrix(c.circuit());
        const ResidueMatrix split = reduced(naive_product_mod(a, b, mod) +
                                                naive_product_mod(naive_product_mod(a, s, mod), b, mod),
                                            mod);
        CHECK(out == split);
      }
    }
  }
}

TEST_CASE("matmul probes") {
  const Modulus six(6);
  for (Eigen::Index n : {1, 2, 4, 8}) CHECK(verify_matmul_probes(build_dot_circuit(n, six)));
  for (Scalar m : kModuli) CHECK(verify_matmul_probes(build_dot_circuit(5, Modulus(m))));
  for (Eigen::Index n : {2, 4, 8}) {
    auto broken = build_dot_circuit(n, six);
    broken.remove_gate(broken.gate_count() - 1);
    CHECK_FALSE(verify_matmul_probes(broken));
  }
}

TEST_CASE("surplus matrix") {
  const Modulus six(6);
  CHECK(surplus_matrix(build_dot_circuit(1, six)) == ResidueMatrix::Zero(1, 1));
  CHECK(surplus_matrix(build_dot_circuit(2, six)) == ResidueMatrix::Zero(2, 2));
  const ResidueMatrix s4 = surplus_matrix(build_dot_circuit(4, six));
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j)
      CHECK(s4(i, j) == (popcount(static_cast<std::uint64_t>(i ^ j)) == 2 ? 3 : 0));

  for (Scalar m : kModuli) {
    const Modulus mod(m);
    const ResidueMatrix s = surplus_matrix(build_dot_circuit(32, mod));
    for (Eigen::Index i = 0; i < 32; ++i) {
      CHECK(s(i, i) == 0);
      for (Eigen::Index j = 0; j < 32; ++j)
        if (s(i, j) != 0) CHECK_FALSE(zero_factor_set(s(i, j), mod).empty());
    }
  }
  CHECK_THROWS_AS(surplus_matrix(build_s2_circuit(4, six)), PreconditionViolation);
}
