#include "modrep/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include "modrep/errors.hpp"

namespace modrep {

Monomial::Monomial(std::initializer_list<Power> powers)
    : Monomial(std::vector<Power>(powers)) {}

Monomial::Monomial(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end());
  for (const auto& [v, e] : powers) {
    if (e == 0) continue;
    if (!powers_.empty() && powers_.back().first == v) {
      powers_.back().second += e;
    } else {
      powers_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::variable(VarId v, std::uint32_t exponent) { return Monomial{{v, exponent}}; }

std::uint32_t Monomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& p : powers_) d += p.second;
  return d;
}

std::uint32_t Monomial::exponent(VarId v) const noexcept {
  auto it = std::lower_bound(powers_.begin(), powers_.end(), Power{v, 0});
  return it != powers_.end() && it->first == v ? it->second : 0;
}

std::vector<VarId> Monomial::variables() const {
  std::vector<VarId> out;
  out.reserve(powers_.size());
  for (const auto& p : powers_) out.push_back(p.first);
  return out;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.powers_.reserve(powers_.size() + rhs.powers_.size());
  auto a = powers_.begin();
  auto b = rhs.powers_.begin();
  while (a != powers_.end() || b != rhs.powers_.end()) {
    if (b == rhs.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      out.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& rhs) const noexcept {
  if (auto c = degree() <=> rhs.degree(); c != 0) return c;
  auto a = powers_.begin();
  auto b = rhs.powers_.begin();
  for (; a != powers_.end() && b != rhs.powers_.end(); ++a, ++b) {
    if (a->first != b->first) {
      // The side holding the lower variable has the larger exponent there.
      return a->first < b->first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a->second != b->second) return a->second <=> b->second;
  }
  // Equal degree and an equal prefix means both ran out together.
  return std::strong_ordering::equal;
}

std::string to_string(const Monomial& mono) {
  std::string out;
  for (const auto& [v, e] : mono.powers()) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(v) + '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::ostream& operator<<(std::ostream& os, const Monomial& mono) { return os << to_string(mono); }

Polynomial::Polynomial(Modulus mod, std::initializer_list<std::pair<Monomial, Scalar>> terms)
    : mod_(std::move(mod)) {
  for (const auto& [mono, c] : terms) add_term(mono, c);
}

Polynomial Polynomial::constant(const Modulus& mod, Scalar c) {
  Polynomial p(mod);
  p.add_term(Monomial{}, c);
  return p;
}

Polynomial Polynomial::variable(const Modulus& mod, VarId v) {
  Polynomial p(mod);
  p.add_term(Monomial::variable(v), 1);
  return p;
}

std::uint32_t Polynomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
  return d;
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> out;
  for (const auto& [mono, c] : terms_) {
    for (const auto& pw : mono.powers()) out.insert(pw.first);
  }
  return out;
}

Residue Polynomial::coeff(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return Residue(it == terms_.end() ? 0 : it->second, mod_);
}

void Polynomial::add_term(const Monomial& mono, Scalar c) {
  const Scalar r = mod_.reduce(c);
  if (r == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, r);
  if (inserted) return;
  it->second = mod_.add(it->second, r);
  if (it->second == 0) terms_.erase(it);
}

void Polynomial::require_same(const Polynomial& rhs) const {
  if (!(mod_ == rhs.mod_)) {
    throw ModulusMismatch("polynomials over Z_" + std::to_string(mod_.value()) + " and Z_" +
                          std::to_string(rhs.mod_.value()));
  }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  require_same(rhs);
  Polynomial out = *this;
  for (const auto& [mono, c] : rhs.terms_) out.add_term(mono, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  require_same(rhs);
  Polynomial out(mod_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) out.add_term(ma * mb, mod_.mul(ca, cb));
  }
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::scaled(Scalar c) const {
  Polynomial out(mod_);
  for (const auto& [mono, a] : terms_) out.add_term(mono, mod_.mul(a, c));
  return out;
}

Residue poly_coeff(const Polynomial& p, const Monomial& mono) { return p.coeff(mono); }
Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Residue poly_eval(const Polynomial& p, const Assignment& assignment) {
  const Modulus& mod = p.modulus();
  Scalar acc = 0;
  for (const auto& [mono, c] : p.terms()) {
    Scalar term = c;
    for (const auto& [v, e] : mono.powers()) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        throw MissingVariable("no value assigned to x" + std::to_string(v));
      }
      const Scalar base = mod.reduce(it->second);
      for (std::uint32_t i = 0; i < e; ++i) term = mod.mul(term, base);
    }
    acc = mod.add(acc, term);
  }
  return Residue(acc, mod);
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : p.terms()) {
    if (!out.empty()) out += '+';
    out += std::to_string(c);
    if (!mono.is_constant()) out += '*' + to_string(mono);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Modulus& mod) : text_(text), mod_(mod) {}

  Polynomial parse() {
    Polynomial out(mod_);
    skip_space();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    for (;;) {
      parse_term(out);
      skip_space();
      if (at_end()) break;
      expect('+');
    }
    return out;
  }

 private:
  void parse_term(Polynomial& out) {
    Scalar coeff = 1;
    std::vector<Monomial::Power> powers;
    bool any_factor = false;
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff = mod_.mul(coeff, static_cast<Scalar>(parse_number() % static_cast<std::uint64_t>(mod_.value())));
      } else if (ch == 'x') {
        ++pos_;
        const auto var = parse_number();
        std::uint64_t exponent = 1;
        skip_space();
        if (!at_end() && text_[pos_] == '^') {
          ++pos_;
          skip_space();
          exponent = parse_number();
        }
        if (var > UINT32_MAX || exponent > UINT32_MAX) throw ParseError("value too large", pos_);
        powers.emplace_back(static_cast<VarId>(var), static_cast<std::uint32_t>(exponent));
      } else {
        break;
      }
      any_factor = true;
      skip_space();
      if (!at_end() && text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (at_end() || text_[pos_] == '+') throw ParseError("dangling '*'", pos_);
      }
    }
    if (!any_factor) {
      throw ParseError(at_end() ? "expected a term" : std::string("unexpected character '") +
                                                          text_[pos_] + "'",
                       pos_);
    }
    out.add_term(Monomial(std::move(powers)), coeff);
  }

  std::uint64_t parse_number() {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) throw ParseError("number too large", start);
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", pos_);
    return v;
  }

  void expect(char c) {
    if (at_end() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  std::string_view text_;
  const Modulus& mod_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Modulus& mod) {
  return PolyParser(text, mod).parse();
}

}  // namespace modrep
