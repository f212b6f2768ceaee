#include "modrep/orpoly.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "modrep/errors.hpp"

namespace modrep {

namespace {

void require_plan_modulus(const Modulus& mod) {
  if (!mod.squarefree()) {
    throw InvalidModulus("modulus must be squarefree, got " + std::to_string(mod.value()));
  }
  if (mod.factor_count() < 2) {
    throw InvalidModulus("modulus must have at least two prime factors, got " +
                         std::to_string(mod.value()));
  }
}

Scalar checked_pow(Scalar base, int e) {
  Scalar out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > std::numeric_limits<Scalar>::max() / base) return std::numeric_limits<Scalar>::max();
    out *= base;
  }
  return out;
}

// Product in the elementary symmetric basis of multilinear polynomials, mod p:
// S^a S^b = sum_t C(t, a) C(a, a + b - t) S^t, truncated at t <= k.
std::vector<Scalar> sym_mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y,
                            std::size_t k, Scalar p) {
  std::vector<Scalar> out(x.size(), 0);
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) {
      if (y[b] == 0) continue;
      const Scalar xy = x[a] * y[b] % p;
      const std::size_t lo = std::max(a, b);
      const std::size_t hi = std::min({a + b, k, out.size() - 1});
      for (std::size_t t = lo; t <= hi; ++t) {
        const Scalar m = binom_mod_prime(t, a, p) * binom_mod_prime(a, a + b - t, p) % p;
        out[t] = (out[t] + xy * m) % p;
      }
    }
  }
  return out;
}

// d_p on the symmetric basis, mod p, with coefficient slots 0..len-1.
std::vector<Scalar> digit_indicator(Scalar p, int exponent, std::size_t k, std::size_t len) {
  std::vector<Scalar> prod(len, 0);
  prod[0] = 1;
  Scalar ps = 1;
  for (int s = 0; s < exponent; ++s, ps *= p) {
    std::vector<Scalar> basis(len, 0);
    if (static_cast<std::size_t>(ps) < len) basis[static_cast<std::size_t>(ps)] = 1;
    std::vector<Scalar> power(len, 0);
    power[0] = 1;
    for (Scalar j = 0; j < p - 1; ++j) power = sym_mul(power, basis, k, p);
    for (auto& c : power) c = (p - c) % p;
    power[0] = (power[0] + 1) % p;
    prod = sym_mul(prod, power, k, p);
  }
  for (auto& c : prod) c = (p - c) % p;
  prod[0] = (prod[0] + 1) % p;
  return prod;
}

}  // namespace

Scalar ExponentPlan::coverage() const {
  Scalar out = 1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const Scalar f = checked_pow(modulus.factor(i).prime, exponents[i]);
    if (f == std::numeric_limits<Scalar>::max() || out > std::numeric_limits<Scalar>::max() / f) {
      return std::numeric_limits<Scalar>::max();
    }
    out *= f;
  }
  return out;
}

ExponentPlan choose_exponents(std::size_t k, const Modulus& mod) {
  require_plan_modulus(mod);
  const std::size_t l = mod.factor_count();
  ExponentPlan best{mod, k, std::vector<int>(l, 0), 0};
  if (k == 0) return best;

  const auto target = static_cast<Scalar>(k);
  // Feasible start: p_1^a covering k, times p_2. Nothing of larger degree
  // needs to be searched.
  int a0 = 0;
  while (checked_pow(mod.factor(0).prime, a0) <= target) ++a0;
  Scalar bound = std::max(checked_pow(mod.factor(0).prime, a0), mod.factor(1).prime) - 1;

  std::vector<int> current(l, 0);
  bool found = false;
  auto consider = [&] {
    const int used = static_cast<int>(std::count_if(current.begin(), current.end(),
                                                    [](int a) { return a > 0; }));
    if (used < 2) return;
    ExponentPlan cand{mod, k, current, 0};
    if (cand.coverage() <= target) return;
    for (std::size_t i = 0; i < l; ++i) {
      cand.degree = std::max(cand.degree, checked_pow(mod.factor(i).prime, current[i]) - 1);
    }
    // Enumeration is lexicographic, so strict improvement keeps the
    // smallest vector among equal degrees.
    if (!found || cand.degree < best.degree) {
      best = std::move(cand);
      found = true;
    }
  };
  auto recurse = [&](auto& self, std::size_t i) -> void {
    if (i == l) {
      consider();
      return;
    }
    const Scalar p = mod.factor(i).prime;
    for (int a = 0; checked_pow(p, a) - 1 <= bound; ++a) {
      current[i] = a;
      self(self, i + 1);
    }
    current[i] = 0;
  };
  recurse(recurse, 0);
  if (!found) throw std::logic_error("no exponent plan found");
  return best;
}

SymmetricPoly::SymmetricPoly(Modulus mod, std::size_t k, std::vector<Scalar> coefficients)
    : mod_(std::move(mod)), k_(k), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() > k_ + 1) coeffs_.resize(k_ + 1);
  for (auto& c : coeffs_) c = mod_.reduce(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t SymmetricPoly::degree() const noexcept {
  return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

Polynomial SymmetricPoly::multilinear_form(VarId first_var, std::size_t max_terms) const {
  // Count first so a too-large request fails before allocating.
  std::size_t total = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (coeffs_[t] == 0) continue;
    std::size_t c = 1;
    for (std::size_t i = 0; i < t; ++i) {
      c = c * (k_ - i) / (i + 1);
      if (c > max_terms) break;
    }
    total += c;
    if (total > max_terms) {
      throw std::length_error("multilinear form of S-basis polynomial exceeds " +
                              std::to_string(max_terms) + " terms");
    }
  }

  Polynomial out(mod_);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (coeffs_[t] == 0) continue;
    std::vector<std::size_t> idx(t);
    for (std::size_t i = 0; i < t; ++i) idx[i] = i;
    for (;;) {
      std::vector<Monomial::Power> powers;
      powers.reserve(t);
      for (auto i : idx) powers.emplace_back(first_var + static_cast<VarId>(i), 1);
      out.add_term(Monomial(std::move(powers)), coeffs_[t]);
      // Next t-subset of {0..k-1} in lexicographic order.
      std::size_t pos = t;
      while (pos > 0 && idx[pos - 1] == k_ - t + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < t; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

WeakOrPoly build_or_poly(std::size_t k, const Modulus& mod) {
  ExponentPlan plan = choose_exponents(k, mod);
  const std::size_t len = std::min<std::size_t>(k, static_cast<std::size_t>(plan.degree)) + 1;
  std::vector<Scalar> coeffs(len, 0);
  for (std::size_t i = 0; i < mod.factor_count(); ++i) {
    if (plan.exponents[i] == 0) continue;
    const auto ind = digit_indicator(mod.factor(i).prime, plan.exponents[i], k, len);
    const Scalar unit = mod.crt_unit(i);
    for (std::size_t t = 0; t < len; ++t) coeffs[t] = mod.add(coeffs[t], mod.mul(unit, ind[t]));
  }
  SymmetricPoly poly(mod, k, std::move(coeffs));
  return {std::move(plan), std::move(poly)};
}

std::vector<Scalar> weight_table(const SymmetricPoly& q) {
  const Modulus& mod = q.modulus();
  if (!mod.squarefree()) {
    throw InvalidModulus("weight tables need a squarefree modulus, got " +
                         std::to_string(mod.value()));
  }
  std::vector<Scalar> table(q.k() + 1, 0);
  const auto& coeffs = q.coefficients();
  for (std::size_t w = 0; w <= q.k(); ++w) {
    ResidueVector parts;
    for (const auto& f : mod.factors()) {
      Scalar acc = 0;
      for (std::size_t t = 0; t < coeffs.size() && t <= w; ++t) {
        const Scalar c = coeffs[t] % f.prime;
        if (c != 0) acc = (acc + c * binom_mod_prime(w, t, f.prime)) % f.prime;
      }
      parts.components.push_back(acc);
      parts.moduli.push_back(f.value);
    }
    table[w] = crt_combine(parts, mod).value();
  }
  return table;
}

bool is_weak_or_table(const std::vector<Scalar>& table, const Modulus& mod) {
  if (table.empty() || mod.reduce(table[0]) != 0) return false;
  return std::all_of(table.begin() + 1, table.end(),
                     [&mod](Scalar v) { return is_selector_value(v, mod); });
}

}  // namespace modrep
