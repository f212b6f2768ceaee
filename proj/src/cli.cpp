#include "modrep/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "modrep/circuit.hpp"
#include "modrep/construct.hpp"
#include "modrep/errors.hpp"
#include "modrep/orpoly.hpp"
#include "modrep/polynomial.hpp"
#include "modrep/representation.hpp"

namespace modrep::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Input problems the user can fix; mapped to kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
}

Modulus construction_modulus(Scalar m) {
  Modulus mod(m);
  if (!mod.squarefree()) throw UsageError("modulus must be squarefree");
  if (mod.factor_count() < 2) throw UsageError("modulus must have at least two prime factors");
  return mod;
}

Json factors_json(const Modulus& mod) {
  Json out = Json::array();
  for (const auto& f : mod.factors()) out.push_back({f.prime, f.exponent});
  return out;
}

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  Json agrees = Json::array();
  for (bool b : w->agrees) agrees.push_back(b);
  return Json{{"monomial", to_string(w->monomial)},
              {"true_coeff", w->true_coeff},
              {"candidate_coeff", w->candidate_coeff},
              {"agrees_per_factor", agrees}};
}

Json verdict_json(const RepVerdict& v) {
  Json out;
  for (Notion n : {Notion::alternative, Notion::zero_a_strong, Notion::one_a_strong}) {
    const auto& r = v.get(n);
    out[to_string(n)] = {{"holds", r.holds}, {"witness", witness_json(r.witness)}};
  }
  return out;
}

struct Timer {
  bool enabled = false;
  Clock::time_point start = Clock::now();

  void stamp(Json& report) const {
    if (!enabled) return;
    report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

void emit(std::ostream& os, const Json& report) { os << report.dump(2) << '\n'; }

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string kind;
  Eigen::Index n = 0;
  Scalar m = 0;
  std::string out;
};

int cmd_build(const BuildArgs& a, bool timing, std::ostream& out, std::ostream& err) {
  Timer timer{timing};
  if (a.n < 1) throw UsageError("--n must be >= 1");
  const Modulus mod = construction_modulus(a.m);
  Json report{{"command", "build " + a.kind}, {"m", a.m}, {"factors", factors_json(mod)},
              {"n", a.n}};
  BilinearCircuit c = a.kind == "s2" ? build_s2_circuit(a.n, mod) : build_dot_circuit(a.n, mod);
  bool pass = false;
  if (a.kind == "s2") {
    const auto v = verify_s2_circuit(c);
    pass = v.passed();
    report["verdicts"] = verdict_json(v.verdict);
    report["symmetric"] = v.symmetric;
    report["zero_diagonal"] = v.zero_diagonal;
  } else {
    const auto v = verify_dot_circuit(c);
    pass = v.passed();
    report["verdicts"] = verdict_json(v.verdict);
    report["diagonal_exact"] = v.diagonal_exact;
  }
  const IndexEncoding enc(a.n);
  const auto plan = choose_exponents(static_cast<std::size_t>(enc.k), mod);
  report["k"] = enc.k;
  report["degree"] = plan.degree;
  report["gate_count"] = c.gate_count();
  report["nonzero_coefficients"] = c.nonzero_coefficients();
  report["bilinear_mults"] = 0;
  report["pass"] = pass;
  timer.stamp(report);
  if (!pass) {
    emit(err, report);
    err << "error: constructed circuit failed its verifier\n";
    return kContract;
  }
  if (a.out.empty()) {
    out << serialize(c);
    emit(err, report);
  } else {
    write_file(a.out, serialize(c));
    emit(out, report);
  }
  return kSuccess;
}

// ---------------------------------------------------------------- verify

constexpr Eigen::Index kProbeLimit = 32;

int cmd_verify(const std::string& path, const std::string& target, bool timing,
               std::ostream& out) {
  Timer timer{timing};
  const BilinearCircuit c = deserialize(read_file(path));
  Json report{{"command", "verify"}, {"target", target}, {"m", c.modulus().value()},
              {"n", c.n()}, {"gate_count", c.gate_count()}};
  bool pass = false;
  if (target == "s2") {
    const auto v = verify_s2_circuit(c);
    report["verdicts"] = verdict_json(v.verdict);
    report["symmetric"] = v.symmetric;
    report["zero_diagonal"] = v.zero_diagonal;
    report["selector_off_diagonal"] = v.selector_off_diagonal;
    pass = v.passed();
  } else {
    const auto v = verify_dot_circuit(c);
    report["verdicts"] = verdict_json(v.verdict);
    report["diagonal_exact"] = v.diagonal_exact;
    pass = v.passed();
    if (c.n() <= kProbeLimit) {
      const bool probes = verify_matmul_probes(c);
      report["probes"] = probes;
      pass = pass && probes;
    } else {
      report["probes"] = nullptr;
    }
  }
  report["pass"] = pass;
  timer.stamp(report);
  emit(out, report);
  return pass ? kSuccess : kVerdictFail;
}

// ---------------------------------------------------------------- verify-rep

int cmd_verify_rep(const std::string& f_path, const std::string& g_path, Scalar m,
                   const std::string& notion, std::ostream& out) {
  const Modulus mod(m);
  const Polynomial f = parse_polynomial(read_file(f_path), mod);
  const Polynomial g = parse_polynomial(read_file(g_path), mod);
  const RepVerdict v = check_representation(f, g);
  const Notion wanted = notion == "alternative" ? Notion::alternative
                        : notion == "0a"        ? Notion::zero_a_strong
                                                : Notion::one_a_strong;
  Json surplus = Json::object();
  const SurplusReport report_s = surplus_of(f, g);
  for (const auto& [mono, entry] : report_s.entries()) {
    surplus[to_string(mono)] = {{"coefficient", entry.coefficient},
                                {"zero_factors", entry.zero_factors}};
  }
  Json report{{"command", "verify-rep"}, {"m", m},          {"f", to_string(f)},
              {"g", to_string(g)},      {"notion", to_string(wanted)},
              {"verdicts", verdict_json(v)}, {"surplus", surplus},
              {"pass", v.get(wanted).holds}};
  emit(out, report);
  return v.get(wanted).holds ? kSuccess : kVerdictFail;
}

// ---------------------------------------------------------------- matmul

struct MatmulArgs {
  std::string circuit, a, b, out, stats;
  bool unsafe = false;
};

int cmd_matmul(const MatmulArgs& args, bool timing, std::ostream& out, std::ostream& err) {
  Timer timer{timing};
  BilinearCircuit c = deserialize(read_file(args.circuit));
  const Modulus mod = c.modulus();
  const ResidueMatrix a = matrix_from_csv(read_file(args.a), mod);
  const ResidueMatrix b = matrix_from_csv(read_file(args.b), mod);
  if (a.rows() != c.n() || a.cols() != c.n() || b.rows() != c.n() || b.cols() != c.n()) {
    throw UsageError("matrices must be " + std::to_string(c.n()) + "x" + std::to_string(c.n()) +
                     " to match the circuit");
  }
  CostMeter meter;
  ResidueMatrix product;
  const std::size_t gates = c.gate_count();
  if (args.unsafe) {
    product = matmul_rep_unchecked(a, b, c, meter);
  } else {
    std::optional<VerifiedDotCircuit> verified;
    try {
      verified.emplace(certify_dot_circuit(std::move(c)));
    } catch (const ContractViolation& e) {
      err << "error: " << e.what() << " (pass --unsafe to run anyway)\n";
      return kVerdictFail;
    }
    product = matmul_rep(a, b, *verified, meter);
  }
  Json report{{"command", "matmul"},
              {"m", mod.value()},
              {"n", a.rows()},
              {"gate_count", gates},
              {"bilinear_mults", meter.bilinear_mults},
              {"free_ops", meter.free_ops},
              {"verified", !args.unsafe}};
  timer.stamp(report);
  if (args.out.empty()) {
    out << matrix_to_csv(product);
  } else {
    write_file(args.out, matrix_to_csv(product));
  }
  if (!args.stats.empty()) {
    write_file(args.stats, report.dump(2) + "\n");
  } else {
    emit(args.out.empty() ? err : out, report);
  }
  return kSuccess;
}

// ---------------------------------------------------------------- or-table

int cmd_or_table(std::size_t k, Scalar m, std::ostream& out) {
  const Modulus mod = construction_modulus(m);
  const auto q = build_or_poly(k, mod);
  const auto table = weight_table(q.poly);
  out << "# k=" << k << " m=" << m << " exponents=";
  for (std::size_t i = 0; i < q.plan.exponents.size(); ++i) {
    out << (i ? "," : "") << q.plan.exponents[i];
  }
  out << " degree=" << q.plan.degree << '\n' << "w,value,selector\n";
  bool ok = mod.reduce(table[0]) == 0;
  for (std::size_t w = 0; w < table.size(); ++w) {
    const bool good = w == 0 ? table[w] == 0 : is_selector_value(table[w], mod);
    ok = ok && good;
    out << w << ',' << table[w] << ',' << (good ? "ok" : "VIOLATION") << '\n';
  }
  return ok ? kSuccess : kContract;
}

// ---------------------------------------------------------------- bench

constexpr Eigen::Index kMaxBenchN = Eigen::Index{1} << 20;
constexpr Eigen::Index kMaxTimedN = 512;

std::pair<Eigen::Index, Eigen::Index> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--n-range must look like LO:HI");
  try {
    const auto lo = std::stoll(text.substr(0, colon));
    const auto hi = std::stoll(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw UsageError("--n-range needs 1 <= LO <= HI");
    if (hi > kMaxBenchN) throw UsageError("--n-range upper bound exceeds 2^20");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--n-range must look like LO:HI");
  }
}

int cmd_bench(const std::string& range, Scalar m, const std::string& out_path, bool timing,
              std::uint64_t seed, std::ostream& out) {
  const Modulus mod = construction_modulus(m);
  const auto [lo, hi] = parse_range(range);
  std::mt19937_64 rng(seed);
  std::ostringstream csv;
  csv << "n,k,d,gate_count,n2,n2_gates" << (timing ? ",matmul_ms" : "") << '\n';
  for (Eigen::Index n = 1; n <= hi; n *= 2) {
    if (n < lo) continue;
    const IndexEncoding enc(n);
    const auto plan = choose_exponents(static_cast<std::size_t>(enc.k), mod);
    const std::uint64_t gates = s2_gate_count_pow2(enc.k, mod) + 1;
    const auto n2 = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
    csv << n << ',' << enc.k << ',' << plan.degree << ',' << gates << ',' << n2 << ','
        << n2 * gates;
    if (timing) {
      csv << ',';
      if (n <= kMaxTimedN) {
        const auto verified = certify_dot_circuit(build_dot_circuit(n, mod));
        std::uniform_int_distribution<Scalar> dist(0, m - 1);
        ResidueMatrix a = ResidueMatrix::NullaryExpr(n, n, [&] { return dist(rng); });
        ResidueMatrix b = ResidueMatrix::NullaryExpr(n, n, [&] { return dist(rng); });
        CostMeter meter;
        const auto t0 = Clock::now();
        (void)matmul_rep(a, b, verified, meter);
        csv << std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      }
    }
    csv << '\n';
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_file(out_path, csv.str());
  }
  return kSuccess;
}

// ---------------------------------------------------------------- check

// Seeded self-check: matmul_rep against A H B computed from the expanded
// coefficient matrix.
int cmd_check(Eigen::Index n, Scalar m, std::uint64_t seed, int trials, std::ostream& out) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const Modulus mod = construction_modulus(m);
  const auto verified = certify_dot_circuit(build_dot_circuit(n, mod));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Scalar> dist(0, m - 1);
  int failures = 0;
  CostMeter meter;
  for (int t = 0; t < trials; ++t) {
    ResidueMatrix a = ResidueMatrix::NullaryExpr(n, n, [&] { return dist(rng); });
    ResidueMatrix b = ResidueMatrix::NullaryExpr(n, n, [&] { return dist(rng); });
    const ResidueMatrix c = matmul_rep(a, b, verified, meter);
    const ResidueMatrix expect =
        naive_product_mod(naive_product_mod(a, verified.expanded(), mod), b, mod);
    if (c != expect) ++failures;
  }
  Json report{{"command", "check"},   {"m", m},
              {"n", n},               {"seed", seed},
              {"trials", trials},     {"failures", failures},
              {"bilinear_mults", meter.bilinear_mults},
              {"pass", failures == 0}};
  emit(out, report);
  return failures == 0 ? kSuccess : kContract;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representations of dot and matrix products modulo composites", "modrep"};
  app.require_subcommand(1);
  bool timing = false;
  std::uint64_t seed = 0;
  app.add_flag("--timing", timing, "Add wall-clock timings (output is then not reproducible)");
  app.add_option("--seed", seed, "Seed for randomized commands")->capture_default_str();

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build and verify an s2 or dot circuit");
  build_cmd->add_option("kind", build.kind)->required()->check(CLI::IsMember({"s2", "dot"}));
  build_cmd->add_option("--n", build.n)->required();
  build_cmd->add_option("--m", build.m)->required();
  build_cmd->add_option("--out", build.out, "Circuit file (default: standard output)");

  std::string verify_path, verify_target = "dot";
  auto* verify_cmd = app.add_subcommand("verify", "Verify a circuit file");
  verify_cmd->add_option("circuit", verify_path)->required();
  verify_cmd->add_option("--target", verify_target)
      ->check(CLI::IsMember({"dot", "s2"}))
      ->capture_default_str();

  std::string f_path, g_path, notion = "1a";
  Scalar rep_m = 0;
  auto* rep_cmd = app.add_subcommand("verify-rep", "Check that g represents f modulo m");
  rep_cmd->add_option("f", f_path)->required();
  rep_cmd->add_option("g", g_path)->required();
  rep_cmd->add_option("--m", rep_m)->required();
  rep_cmd->add_option("--notion", notion)
      ->check(CLI::IsMember({"alternative", "0a", "1a"}))
      ->capture_default_str();

  MatmulArgs mm;
  auto* mm_cmd = app.add_subcommand("matmul", "Matrix-product representation through a circuit");
  mm_cmd->add_option("circuit", mm.circuit)->required();
  mm_cmd->add_option("a", mm.a)->required();
  mm_cmd->add_option("b", mm.b)->required();
  mm_cmd->add_option("--out", mm.out, "Output CSV (default: standard output)");
  mm_cmd->add_option("--stats", mm.stats, "Write the run report here");
  mm_cmd->add_flag("--unsafe", mm.unsafe, "Skip circuit certification");

  std::size_t or_k = 0;
  Scalar or_m = 0;
  auto* or_cmd = app.add_subcommand("or-table", "Weight table of the weak-OR polynomial");
  or_cmd->add_option("--k", or_k)->required();
  or_cmd->add_option("--m", or_m)->required();

  std::string range, bench_out;
  Scalar bench_m = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Gate and multiplication counts over n");
  bench_cmd->add_option("--n-range", range)->required();
  bench_cmd->add_option("--m", bench_m)->required();
  bench_cmd->add_option("--out", bench_out, "CSV file (default: standard output)");

  Eigen::Index check_n = 0;
  Scalar check_m = 0;
  int trials = 100;
  auto* check_cmd = app.add_subcommand("check", "Randomized matmul self-check");
  check_cmd->add_option("--n", check_n)->required();
  check_cmd->add_option("--m", check_m)->required();
  check_cmd->add_option("--trials", trials)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*build_cmd) return cmd_build(build, timing, out, err);
    if (*verify_cmd) return cmd_verify(verify_path, verify_target, timing, out);
    if (*rep_cmd) return cmd_verify_rep(f_path, g_path, rep_m, notion, out);
    if (*mm_cmd) return cmd_matmul(mm, timing, out, err);
    if (*or_cmd) return cmd_or_table(or_k, or_m, out);
    if (*bench_cmd) return cmd_bench(range, bench_m, bench_out, timing, seed, out);
    if (*check_cmd) return cmd_check(check_n, check_m, seed, trials, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // InvalidModulus, DimensionMismatch and friends.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kContract;
  }
  return kUsage;
}

}  // namespace modrep::cli
