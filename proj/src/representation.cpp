#include "modrep/representation.hpp"

#include <algorithm>
#include <functional>

#include "modrep/errors.hpp"

namespace modrep {

std::string to_string(Notion notion) {
  switch (notion) {
    case Notion::alternative:
      return "alternative";
    case Notion::zero_a_strong:
      return "0-a-strong";
    case Notion::one_a_strong:
      return "1-a-strong";
  }
  return "?";
}

bool CoefficientClass::holds(Notion notion) const {
  switch (notion) {
    case Notion::alternative:
      return alternative;
    case Notion::zero_a_strong:
      return zero_a_strong;
    case Notion::one_a_strong:
      return one_a_strong;
  }
  return false;
}

CoefficientClass classify_coefficient(Scalar a, Scalar b, const Modulus& mod) {
  CoefficientClass out;
  a = mod.reduce(a);
  b = mod.reduce(b);
  bool any_agree = false;
  bool mismatch = false;
  bool zero_on_mismatch = true;
  for (const auto& f : mod.factors()) {
    const bool agree = (a - b) % f.value == 0;
    out.agrees.push_back(agree);
    any_agree = any_agree || agree;
    if (!agree) {
      mismatch = true;
      zero_on_mismatch = zero_on_mismatch && b % f.value == 0;
    }
  }
  out.alternative = any_agree;
  out.zero_a_strong = any_agree && zero_on_mismatch;
  out.one_a_strong = any_agree && (!mismatch || a == 0);
  return out;
}

const NotionResult& RepVerdict::get(Notion notion) const {
  switch (notion) {
    case Notion::alternative:
      return alternative;
    case Notion::zero_a_strong:
      return zero_a_strong;
    case Notion::one_a_strong:
      break;
  }
  return one_a_strong;
}

namespace {

void require_same(const Polynomial& f, const Polynomial& g) {
  if (!(f.modulus() == g.modulus())) {
    throw ModulusMismatch("representation check across Z_" +
                          std::to_string(f.modulus().value()) + " and Z_" +
                          std::to_string(g.modulus().value()));
  }
}

// Calls visit(monomial, a, b) for every monomial in the union of supports,
// in ascending monomial order.
template <typename Visit>
void for_each_union_term(const Polynomial& f, const Polynomial& g, Visit&& visit) {
  auto a = f.terms().begin();
  auto b = g.terms().begin();
  const auto a_end = f.terms().end();
  const auto b_end = g.terms().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->first < b->first)) {
      visit(a->first, a->second, Scalar{0});
      ++a;
    } else if (a == a_end || b->first < a->first) {
      visit(b->first, Scalar{0}, b->second);
      ++b;
    } else {
      visit(a->first, a->second, b->second);
      ++a;
      ++b;
    }
  }
}

void record(NotionResult& result, bool ok, const Monomial& mono, Scalar a, Scalar b,
            const CoefficientClass& cls) {
  if (ok || !result.holds) return;
  result.holds = false;
  result.witness = Witness{mono, a, b, cls.agrees};
}

void record_all(RepVerdict& v, const Monomial& mono, Scalar a, Scalar b, const Modulus& mod) {
  const auto cls = classify_coefficient(a, b, mod);
  record(v.alternative, cls.alternative, mono, a, b, cls);
  record(v.zero_a_strong, cls.zero_a_strong, mono, a, b, cls);
  record(v.one_a_strong, cls.one_a_strong, mono, a, b, cls);
}

NotionResult check_notion(const Polynomial& f, const Polynomial& g, Notion notion) {
  require_same(f, g);
  NotionResult out;
  for_each_union_term(f, g, [&](const Monomial& mono, Scalar a, Scalar b) {
    if (!out.holds) return;
    const auto cls = classify_coefficient(a, b, f.modulus());
    record(out, cls.holds(notion), mono, a, b, cls);
  });
  return out;
}

}  // namespace

NotionResult check_alternative(const Polynomial& f, const Polynomial& g) {
  return check_notion(f, g, Notion::alternative);
}

NotionResult check_0a_strong(const Polynomial& f, const Polynomial& g) {
  return check_notion(f, g, Notion::zero_a_strong);
}

NotionResult check_1a_strong(const Polynomial& f, const Polynomial& g) {
  return check_notion(f, g, Notion::one_a_strong);
}

RepVerdict check_representation(const Polynomial& f, const Polynomial& g) {
  require_same(f, g);
  RepVerdict v;
  for_each_union_term(f, g, [&](const Monomial& mono, Scalar a, Scalar b) {
    record_all(v, mono, a, b, f.modulus());
  });
  return v;
}

Monomial bilinear_monomial(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  return Monomial{{static_cast<VarId>(i + 1), 1}, {static_cast<VarId>(n + j + 1), 1}};
}

RepVerdict check_bilinear(const ResidueMatrix& truth, const ResidueMatrix& candidate,
                          const Modulus& mod) {
  if (truth.rows() != candidate.rows() || truth.cols() != candidate.cols() ||
      truth.rows() != truth.cols()) {
    throw DimensionMismatch("bilinear check needs two square matrices of equal size");
  }
  const Eigen::Index n = truth.rows();
  RepVerdict v;
  // Row-major scan so witnesses come out in a predictable order.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar a = mod.reduce(truth(i, j));
      const Scalar b = mod.reduce(candidate(i, j));
      if (a == b) continue;
      const auto cls = classify_coefficient(a, b, mod);
      if (cls.one_a_strong && cls.zero_a_strong) continue;
      const auto mono = bilinear_monomial(n, i, j);
      record(v.alternative, cls.alternative, mono, a, b, cls);
      record(v.zero_a_strong, cls.zero_a_strong, mono, a, b, cls);
      record(v.one_a_strong, cls.one_a_strong, mono, a, b, cls);
    }
  }
  return v;
}

SurplusReport SurplusReport::from_coefficients(
    const Modulus& mod, std::initializer_list<std::pair<Monomial, Scalar>> coefficients) {
  SurplusReport out(mod);
  for (const auto& [mono, c] : coefficients) out.insert(mono, c);
  return out;
}

void SurplusReport::insert(const Monomial& mono, Scalar coefficient) {
  const Scalar c = mod_.reduce(coefficient);
  if (c == 0) return;
  entries_[mono] = SurplusEntry{c, zero_factor_set(c, mod_)};
}

SurplusReport surplus_of(const Polynomial& f, const Polynomial& g) {
  require_same(f, g);
  SurplusReport out(f.modulus());
  for (const auto& [mono, b] : g.terms()) {
    if (f.coeff(mono).is_zero()) out.insert(mono, b);
  }
  return out;
}

bool surpluses_disjoint(const SurplusReport& s, const SurplusReport& t) {
  return std::none_of(s.entries().begin(), s.entries().end(),
                      [&t](const auto& e) { return t.contains(e.first); });
}

bool surpluses_compatible(const SurplusReport& s, const SurplusReport& t) {
  for (const auto& [mono, entry] : s.entries()) {
    auto it = t.entries().find(mono);
    if (it == t.entries().end()) continue;
    const auto& other = it->second.zero_factors;
    const bool shared = std::any_of(entry.zero_factors.begin(), entry.zero_factors.end(),
                                    [&other](std::size_t i) {
                                      return std::find(other.begin(), other.end(), i) !=
                                             other.end();
                                    });
    if (!shared) return false;
  }
  return true;
}

namespace {

void require_one_a_strong(const Polynomial& f, const Polynomial& g, const char* which) {
  const auto r = check_1a_strong(f, g);
  if (!r.holds) {
    throw PreconditionViolation(std::string(which) + " is not a 1-a-strong representation (" +
                                to_string(r.witness->monomial) + ")");
  }
}

std::set<VarId> variables_of(const Polynomial& a, const Polynomial& b) {
  auto out = a.variables();
  const auto more = b.variables();
  out.insert(more.begin(), more.end());
  return out;
}

}  // namespace

Composition rep_product(const Polynomial& f, const Polynomial& g, const Polynomial& f2,
                        const Polynomial& g2, Preconditions pre) {
  require_same(f, g);
  require_same(f, f2);
  require_same(f, g2);
  if (pre == Preconditions::enforced) {
    require_one_a_strong(f, g, "left operand");
    require_one_a_strong(f2, g2, "right operand");
    const auto left = variables_of(f, g);
    const auto right = variables_of(f2, g2);
    for (VarId v : left) {
      if (right.count(v) != 0) {
        throw PreconditionViolation("product operands share variable x" + std::to_string(v));
      }
    }
  }
  Polynomial product = g * g2;
  RepVerdict verdict = check_representation(f * f2, product);
  return {std::move(product), std::move(verdict)};
}

Composition rep_sum(const Polynomial& f, const Polynomial& g, const Polynomial& f2,
                    const Polynomial& g2, Preconditions pre) {
  require_same(f, g);
  require_same(f, f2);
  require_same(f, g2);
  if (pre == Preconditions::enforced) {
    require_one_a_strong(f, g, "left operand");
    require_one_a_strong(f2, g2, "right operand");
    const auto s = surplus_of(f, g);
    const auto t = surplus_of(f2, g2);
    if (!surpluses_compatible(s, t)) {
      throw PreconditionViolation("surpluses are neither disjoint nor compatible");
    }
    auto interferes = [](const SurplusReport& surplus, const Polynomial& target) {
      return std::any_of(surplus.entries().begin(), surplus.entries().end(),
                         [&target](const auto& e) { return !target.coeff(e.first).is_zero(); });
    };
    if (interferes(s, f2) || interferes(t, f)) {
      throw PreconditionViolation("a surplus monomial collides with a true coefficient");
    }
  }
  Polynomial sum = g + g2;
  RepVerdict verdict = check_representation(f + f2, sum);
  return {std::move(sum), std::move(verdict)};
}

}  // namespace modrep
