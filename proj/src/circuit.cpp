#include "modrep/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "modrep/errors.hpp"
#include "modrep/representation.hpp"

namespace modrep {

namespace {

bool same_form(const LinearForm& a, const LinearForm& b) {
  if (a.size() != b.size() || a.nonZeros() != b.nonZeros()) return false;
  LinearForm::InnerIterator ia(a), ib(b);
  for (; ia && ib; ++ia, ++ib) {
    if (ia.index() != ib.index() || ia.value() != ib.value()) return false;
  }
  return true;
}

void validate_form(const LinearForm& form, Eigen::Index n, const Modulus& mod, const char* side) {
  if (form.size() != n) {
    throw DimensionMismatch(std::string("gate ") + side + "-form has size " +
                            std::to_string(form.size()) + ", expected " + std::to_string(n));
  }
  Eigen::Index count = 0;
  for (LinearForm::InnerIterator it(form); it; ++it) {
    if (it.value() <= 0 || it.value() >= mod.value()) {
      throw std::invalid_argument(std::string("gate ") + side + "-coefficient " +
                                  std::to_string(it.value()) + " not in [1, m)");
    }
    ++count;
  }
  if (count == 0) throw std::invalid_argument(std::string("gate ") + side + "-form is zero");
}

}  // namespace

bool operator==(const BilinearGate& a, const BilinearGate& b) {
  return same_form(a.u, b.u) && same_form(a.v, b.v);
}

BilinearCircuit::BilinearCircuit(Modulus mod, Eigen::Index n) : mod_(std::move(mod)), n_(n) {
  if (n < 1) throw DimensionMismatch("circuit needs n >= 1, got " + std::to_string(n));
}

void BilinearCircuit::add_gate(BilinearGate gate) {
  validate_form(gate.u, n_, mod_, "u");
  validate_form(gate.v, n_, mod_, "v");
  gates_.push_back(std::move(gate));
}

void BilinearCircuit::remove_gate(std::size_t i) {
  if (i >= gates_.size()) throw std::out_of_range("gate index out of range");
  gates_.erase(gates_.begin() + static_cast<std::ptrdiff_t>(i));
}

std::size_t BilinearCircuit::nonzero_coefficients() const noexcept {
  std::size_t total = 0;
  for (const auto& g : gates_) total += static_cast<std::size_t>(g.u.nonZeros() + g.v.nonZeros());
  return total;
}

bool BilinearCircuit::operator==(const BilinearCircuit& rhs) const {
  return mod_ == rhs.mod_ && n_ == rhs.n_ && gates_ == rhs.gates_;
}

LinearForm make_form(Eigen::Index n, std::span<const std::pair<Eigen::Index, Scalar>> entries,
                     const Modulus& mod) {
  std::map<Eigen::Index, Scalar> acc;
  for (const auto& [i, c] : entries) {
    if (i < 0 || i >= n) throw DimensionMismatch("form index out of range");
    acc[i] = mod.add(acc[i], c);
  }
  LinearForm form(n);
  form.reserve(static_cast<Eigen::Index>(acc.size()));
  for (const auto& [i, c] : acc) {
    if (c != 0) form.insertBack(i) = c;
  }
  return form;
}

namespace {

Scalar apply_form(const LinearForm& form, const ResidueColumn& z, const Modulus& mod,
                  CostMeter& meter) {
  Scalar acc = 0;
  std::uint64_t terms = 0;
  for (LinearForm::InnerIterator it(form); it; ++it) {
    acc = mod.add(acc, mod.mul(it.value(), z(it.index())));
    ++terms;
  }
  // terms scalar products plus terms - 1 additions.
  meter.free_ops += terms == 0 ? 0 : 2 * terms - 1;
  return acc;
}

}  // namespace

Residue circuit_eval(const BilinearCircuit& c, const ResidueColumn& x, const ResidueColumn& y,
                     CostMeter& meter) {
  if (x.size() != c.n() || y.size() != c.n()) {
    throw DimensionMismatch("circuit over n=" + std::to_string(c.n()) +
                            " evaluated on vectors of size " + std::to_string(x.size()) + ", " +
                            std::to_string(y.size()));
  }
  const Modulus& mod = c.modulus();
  const ResidueColumn xr = reduced(x, mod);
  const ResidueColumn yr = reduced(y, mod);
  Scalar out = 0;
  for (const auto& gate : c.gates()) {
    const Scalar lhs = apply_form(gate.u, xr, mod, meter);
    const Scalar rhs = apply_form(gate.v, yr, mod, meter);
    out = mod.add(out, mod.mul(lhs, rhs));
    ++meter.bilinear_mults;
  }
  if (c.gate_count() > 1) meter.free_ops += c.gate_count() - 1;
  return Residue(out, mod);
}

ResidueMatrix circuit_expand(const BilinearCircuit& c) {
  const Modulus& mod = c.modulus();
  const Eigen::Index n = c.n();
  ResidueMatrix m = ResidueMatrix::Zero(n, n);
  const auto depth = static_cast<std::size_t>(safe_accumulation_depth(mod));
  std::size_t pending = 0;
  for (const auto& gate : c.gates()) {
    for (LinearForm::InnerIterator iv(gate.v); iv; ++iv) {
      auto col = m.col(iv.index());
      for (LinearForm::InnerIterator iu(gate.u); iu; ++iu) {
        col(iu.index()) += iu.value() * iv.value();
      }
    }
    if (++pending == depth) {
      m = reduced(m, mod);
      pending = 0;
    }
  }
  return reduced(m, mod);
}

std::size_t circuit_gate_count(const BilinearCircuit& c) { return c.gate_count(); }

Polynomial bilinear_polynomial(const ResidueMatrix& m, const Modulus& mod) {
  if (m.rows() != m.cols()) throw DimensionMismatch("coefficient matrix must be square");
  const Eigen::Index n = m.rows();
  Polynomial out(mod);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j) != 0) out.add_term(bilinear_monomial(n, i, j), m(i, j));
    }
  }
  return out;
}

namespace {

void write_form(std::string& out, const LinearForm& form) {
  out += '[';
  bool first = true;
  for (LinearForm::InnerIterator it(form); it; ++it) {
    if (!first) out += ',';
    first = false;
    out += '[';
    out += std::to_string(it.index() + 1);
    out += ',';
    out += std::to_string(it.value());
    out += ']';
  }
  out += ']';
}

using Json = nlohmann::json;

const Json& field(const Json& obj, const char* name, const std::string& path) {
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(path + ": missing field '" + name + "'");
  return *it;
}

std::int64_t as_integer(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) throw ParseError(path + ": expected an integer");
  return value.get<std::int64_t>();
}

LinearForm read_form(const Json& arr, Eigen::Index n, const Modulus& mod,
                     const std::string& path) {
  if (!arr.is_array()) throw ParseError(path + ": expected an array of [index, coeff] pairs");
  LinearForm form(n);
  form.reserve(static_cast<Eigen::Index>(arr.size()));
  std::int64_t last = 0;
  for (std::size_t e = 0; e < arr.size(); ++e) {
    const std::string where = path + "[" + std::to_string(e) + "]";
    const Json& pair = arr[e];
    if (!pair.is_array() || pair.size() != 2) throw ParseError(where + ": expected [index, coeff]");
    const std::int64_t index = as_integer(pair[0], where + "[0]");
    const std::int64_t coeff = as_integer(pair[1], where + "[1]");
    if (index < 1 || index > n) {
      throw ParseError(where + ": index " + std::to_string(index) + " out of range [1, " +
                       std::to_string(n) + "]");
    }
    if (index <= last) throw ParseError(where + ": indices must be strictly ascending");
    if (coeff < 0 || coeff >= mod.value()) {
      throw ParseError(where + ": coefficient " + std::to_string(coeff) + " not in [0, " +
                       std::to_string(mod.value()) + ")");
    }
    last = index;
    if (coeff != 0) form.insertBack(index - 1) = coeff;
  }
  if (form.nonZeros() == 0) throw ParseError(path + ": gate side has no nonzero coefficient");
  return form;
}

}  // namespace

std::string serialize(const BilinearCircuit& c) {
  std::string out = "{\"version\":1,\"m\":" + std::to_string(c.modulus().value()) +
                    ",\"n\":" + std::to_string(c.n()) + ",\"gates\":[";
  bool first = true;
  for (const auto& gate : c.gates()) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "{\"u\":";
    write_form(out, gate.u);
    out += ",\"v\":";
    write_form(out, gate.v);
    out += '}';
  }
  out += first ? "]}\n" : "\n]}\n";
  return out;
}

BilinearCircuit deserialize(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed circuit document: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("circuit document must be an object", 0);
  const std::int64_t version = as_integer(field(doc, "version", "$"), "$.version");
  if (version != 1) {
    throw ParseError("$.version: unsupported version " + std::to_string(version));
  }
  const std::int64_t m = as_integer(field(doc, "m", "$"), "$.m");
  const std::int64_t n = as_integer(field(doc, "n", "$"), "$.n");
  if (n < 1) throw ParseError("$.n: must be >= 1");
  std::optional<Modulus> mod;
  try {
    mod.emplace(m);
  } catch (const InvalidModulus& e) {
    throw ParseError(std::string("$.m: ") + e.what());
  }
  const Json& gates = field(doc, "gates", "$");
  if (!gates.is_array()) throw ParseError("$.gates: expected an array");
  BilinearCircuit c(*mod, n);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const std::string path = "$.gates[" + std::to_string(g) + "]";
    if (!gates[g].is_object()) throw ParseError(path + ": expected an object");
    BilinearGate gate{read_form(field(gates[g], "u", path), n, *mod, path + ".u"),
                      read_form(field(gates[g], "v", path), n, *mod, path + ".v")};
    c.add_gate(std::move(gate));
  }
  return c;
}

std::string matrix_to_csv(const ResidueMatrix& a) {
  std::string out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

ResidueMatrix matrix_from_csv(std::string_view text, const Modulus& mod) {
  std::vector<std::vector<Scalar>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    const std::size_t line_start = pos;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    std::vector<Scalar> row;
    std::size_t cell = 0;
    for (;;) {
      std::size_t comma = line.find(',', cell);
      std::string_view token = line.substr(cell, comma == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : comma - cell);
      const auto lead = token.find_first_not_of(" \t");
      const auto tail = token.find_last_not_of(" \t");
      if (lead == std::string_view::npos) throw ParseError("empty CSV cell", line_start + cell);
      token = token.substr(lead, tail - lead + 1);
      Scalar v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("invalid integer '" + std::string(token) + "'", line_start + cell);
      }
      if (v < 0 || v >= mod.value()) {
        throw ParseError("entry " + std::to_string(v) + " not in [0, " +
                             std::to_string(mod.value()) + ")",
                         line_start + cell);
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      cell = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged CSV row", line_start);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty matrix", 0);
  ResidueMatrix out(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return out;
}

}  // namespace modrep
