#ifndef PERMEXT_TEXT_FORMAT_HPP
#define PERMEXT_TEXT_FORMAT_HPP

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "permext/audit.hpp"
#include "permext/errors.hpp"
#include "permext/formulation.hpp"
#include "permext/linalg.hpp"
#include "permext/permutation.hpp"
#include "permext/rational.hpp"
#include "permext/section.hpp"
#include "permext/symmetry.hpp"

// Line-oriented text formats. Blank lines and lines starting with '#' are
// ignored. Rationals are written "p/q" or "p".
//
//   formulation                      subspace
//   dims n=3 d=12 m=3                dims n=2 d=4 m=2
//   counts eq=9 ineq=9               counts eq=4
//   vars x1 x2 ...                   vars z1_1 ...
//   eq <d coefficients> = <rhs>      eq <d coefficients> = <rhs>
//   ineq <d coefficients> <= <rhs>   proj <d coefficients>
//   proj <d coefficients>            end
//   end

namespace permext {

namespace text {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
  std::string raw;
};

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tokens = split_ws(raw);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    out.push_back({number, std::move(tokens), raw});
  }
  return out;
}

inline std::vector<Line> read_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_lines(in);
}

inline Rational rational_at(const Line& l, const std::string& tok) {
  try {
    return Rational::parse(tok);
  } catch (const InvalidInput& e) {
    throw ParseError(l.number, e.what());
  }
}

inline long integer_at(const Line& l, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(l.number, "expected an integer, got '" + tok + "'");
  }
}

inline Permutation permutation_at(const Line& l, std::string_view tok, int n = 0) {
  try {
    return Permutation::parse(tok, n);
  } catch (const InvalidInput& e) {
    throw ParseError(l.number, e.what());
  }
}

/// Parses "key=value" tokens after the keyword.
inline std::map<std::string, long> key_values(const Line& l) {
  std::map<std::string, long> out;
  for (std::size_t k = 1; k < l.tokens.size(); ++k) {
    const auto& t = l.tokens[k];
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(l.number, "expected key=value, got '" + t + "'");
    out[t.substr(0, eq)] = integer_at(l, t.substr(eq + 1));
  }
  return out;
}

inline long require_key(const Line& l, const std::map<std::string, long>& kv,
                        const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(l.number, "missing " + key + "=");
  return it->second;
}

inline std::string join(const RatVector& v) {
  std::string out;
  for (std::size_t j = 0; j < v.dim(); ++j) out += (j ? " " : "") + v[j].str();
  return out;
}

/// Reads `d` coefficients starting at token `from`.
inline RatVector coefficients(const Line& l, std::size_t from, std::size_t d) {
  if (l.tokens.size() < from + d)
    throw ParseError(l.number, "expected " + std::to_string(d) + " coefficients");
  RatVector row(d);
  for (std::size_t j = 0; j < d; ++j) row[j] = rational_at(l, l.tokens[from + j]);
  return row;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw ParseError(last_number(), "unexpected end of input");
    return lines_[pos_];
  }
  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }
  const Line& expect(const std::string& keyword) {
    const Line& l = next();
    if (l.tokens[0] != keyword)
      throw ParseError(l.number, "expected '" + keyword + "', got '" + l.tokens[0] + "'");
    return l;
  }
  std::size_t last_number() const { return lines_.empty() ? 1 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

}  // namespace text

inline std::string emit_formulation(const Formulation& f) {
  f.validate();
  std::ostringstream out;
  out << "formulation\n";
  out << "dims n=" << f.m << " d=" << f.d << " m=" << f.m << "\n";
  out << "counts eq=" << f.num_eq() << " ineq=" << f.num_ineq() << "\n";
  if (!f.var_names.empty()) {
    out << "vars";
    for (const auto& v : f.var_names) out << ' ' << v;
    out << "\n";
  }
  for (std::size_t r = 0; r < f.num_eq(); ++r)
    out << "eq " << text::join(f.eq_lhs.row(r)) << " = " << f.eq_rhs[r].str() << "\n";
  for (std::size_t r = 0; r < f.num_ineq(); ++r)
    out << "ineq " << text::join(f.ineq_lhs.row(r)) << " <= " << f.ineq_rhs[r].str() << "\n";
  for (std::size_t r = 0; r < f.projection.nrows(); ++r)
    out << "proj " << text::join(f.projection.row(r)) << "\n";
  out << "end\n";
  return out.str();
}

inline std::string emit_subspace(const SubspaceExtension& e) {
  e.validate();
  std::ostringstream out;
  out << "subspace\n";
  out << "dims n=" << e.m << " d=" << e.d << " m=" << e.m << "\n";
  out << "counts eq=" << e.lhs.nrows() << "\n";
  if (!e.var_names.empty()) {
    out << "vars";
    for (const auto& v : e.var_names) out << ' ' << v;
    out << "\n";
  }
  for (std::size_t r = 0; r < e.lhs.nrows(); ++r)
    out << "eq " << text::join(e.lhs.row(r)) << " = " << e.rhs[r].str() << "\n";
  for (std::size_t r = 0; r < e.projection.nrows(); ++r)
    out << "proj " << text::join(e.projection.row(r)) << "\n";
  out << "end\n";
  return out.str();
}

/// A parsed extension file: exactly one of the two members is set.
struct ExtensionFile {
  std::optional<Formulation> formulation;
  std::optional<SubspaceExtension> subspace;

  /// The subspace form, converting a formulation when needed.
  SubspaceExtension as_subspace() const {
    return subspace ? *subspace : to_subspace_extension(*formulation);
  }
  Formulation as_formulation_form() const {
    return formulation ? *formulation : as_formulation(*subspace);
  }
};

inline ExtensionFile parse_extension(std::string_view input) {
  text::Cursor cur(text::read_lines(input));
  const text::Line& head = cur.next();
  const std::string kind = head.tokens[0];
  if (kind != "formulation" && kind != "subspace")
    throw ParseError(head.number, "expected 'formulation' or 'subspace', got '" + kind + "'");
  const bool sub = kind == "subspace";
  const text::Line& dims = cur.expect("dims");
  const auto dk = text::key_values(dims);
  const long n = text::require_key(dims, dk, "n");
  const long d = text::require_key(dims, dk, "d");
  const long m = text::require_key(dims, dk, "m");
  if (d < 1 || m < 1) throw ParseError(dims.number, "d and m must be positive");
  if (n != m) throw ParseError(dims.number, "n and m must agree");
  const text::Line& counts = cur.expect("counts");
  const auto ck = text::key_values(counts);
  const long neq = text::require_key(counts, ck, "eq");
  const long nineq = sub ? 0 : text::require_key(counts, ck, "ineq");
  if (neq < 0 || nineq < 0) throw ParseError(counts.number, "negative row count");
  const auto ud = static_cast<std::size_t>(d);

  std::vector<std::string> names;
  RatMatrix eq(0, ud), ineq(0, ud), proj(0, ud);
  RatVector eq_rhs, ineq_rhs;
  while (true) {
    const text::Line& l = cur.next();
    const std::string& key = l.tokens[0];
    if (key == "end") break;
    if (key == "vars") {
      if (!names.empty()) throw ParseError(l.number, "duplicate vars line");
      names.assign(l.tokens.begin() + 1, l.tokens.end());
      if (names.size() != ud)
        throw ParseError(l.number, "expected " + std::to_string(d) + " variable names");
    } else if (key == "eq" || (key == "ineq" && !sub)) {
      const std::string rel = key == "eq" ? "=" : "<=";
      if (l.tokens.size() != ud + 3 || l.tokens[ud + 1] != rel)
        throw ParseError(l.number, "expected " + std::to_string(d) + " coefficients, '" + rel +
                                       "' and a right-hand side");
      RatVector row = text::coefficients(l, 1, ud);
      const Rational rhs = text::rational_at(l, l.tokens[ud + 2]);
      if (key == "eq") {
        eq.append_row(std::move(row));
        eq_rhs.push_back(rhs);
      } else {
        ineq.append_row(std::move(row));
        ineq_rhs.push_back(rhs);
      }
    } else if (key == "proj") {
      if (l.tokens.size() != ud + 1)
        throw ParseError(l.number, "expected " + std::to_string(d) + " projection coefficients");
      proj.append_row(text::coefficients(l, 1, ud));
    } else {
      throw ParseError(l.number, "unknown keyword '" + key + "'");
    }
  }
  if (!cur.done()) throw ParseError(cur.peek().number, "content after 'end'");
  if (eq.nrows() != static_cast<std::size_t>(neq))
    throw ParseError(counts.number, "declared " + std::to_string(neq) + " equality rows, found " +
                                        std::to_string(eq.nrows()));
  if (ineq.nrows() != static_cast<std::size_t>(nineq))
    throw ParseError(counts.number, "declared " + std::to_string(nineq) +
                                        " inequality rows, found " + std::to_string(ineq.nrows()));
  if (proj.nrows() != static_cast<std::size_t>(m))
    throw ParseError(dims.number, "declared m=" + std::to_string(m) + " projection rows, found " +
                                      std::to_string(proj.nrows()));
  ExtensionFile file;
  if (sub) {
    SubspaceExtension e;
    e.m = static_cast<int>(m);
    e.d = static_cast<int>(d);
    e.lhs = std::move(eq);
    e.rhs = std::move(eq_rhs);
    e.projection = std::move(proj);
    e.var_names = std::move(names);
    file.subspace = std::move(e);
  } else {
    Formulation f;
    f.m = static_cast<int>(m);
    f.d = static_cast<int>(d);
    f.eq_lhs = std::move(eq);
    f.eq_rhs = std::move(eq_rhs);
    f.ineq_lhs = std::move(ineq);
    f.ineq_rhs = std::move(ineq_rhs);
    f.projection = std::move(proj);
    f.var_names = std::move(names);
    file.formulation = std::move(f);
  }
  return file;
}

inline Formulation parse_formulation(std::string_view input) {
  auto file = parse_extension(input);
  if (!file.formulation) throw ParseError(1, "expected a formulation, got a subspace extension");
  return std::move(*file.formulation);
}

inline SubspaceExtension parse_subspace(std::string_view input) {
  auto file = parse_extension(input);
  if (!file.subspace) throw ParseError(1, "expected a subspace extension, got a formulation");
  return std::move(*file.subspace);
}

// Section: one line per vertex, "[zeta] : r,r,...", in any order.

inline std::string emit_section(const Section& s) {
  std::ostringstream out;
  for (std::size_t r = 0; r < s.num_vertices(); ++r) {
    out << s.zeta(r).str() << " : ";
    const RatVector& y = s.value(r);
    for (std::size_t j = 0; j < y.dim(); ++j) out << (j ? "," : "") << y[j].str();
    out << "\n";
  }
  return out.str();
}

inline Section parse_section(std::string_view input, int cap = kDefaultEnumerationCap) {
  const auto lines = text::read_lines(input);
  if (lines.empty()) throw ParseError(1, "empty section file");
  int n = -1;
  int d = -1;
  std::vector<std::optional<RatVector>> table;
  for (const auto& l : lines) {
    const auto colon = l.raw.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "expected '[zeta] : values'");
    const Permutation zeta = text::permutation_at(l, l.raw.substr(0, colon));
    if (n < 0) {
      n = zeta.degree();
      if (n < 1) throw ParseError(l.number, "vertex permutation of degree 0");
      check_cap(n, cap, "parse_section");
      table.assign(factorial(static_cast<unsigned>(n)).get_ui(), std::nullopt);
    } else if (zeta.degree() != n) {
      throw ParseError(l.number, "permutation degree differs from earlier lines");
    }
    RatVector y;
    std::string_view rest = std::string_view(l.raw).substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string_view::npos) comma = rest.size();
      const auto toks = text::split_ws(rest.substr(pos, comma - pos));
      if (toks.size() != 1) throw ParseError(l.number, "malformed value list");
      y.push_back(text::rational_at(l, toks[0]));
      pos = comma + 1;
    }
    if (d < 0) d = static_cast<int>(y.dim());
    if (y.dim() != static_cast<std::size_t>(d))
      throw ParseError(l.number, "expected " + std::to_string(d) + " values");
    auto& slot = table[zeta.rank()];
    if (slot) throw ParseError(l.number, "duplicate vertex " + zeta.str());
    slot = std::move(y);
  }
  std::vector<RatVector> by_rank;
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (!table[r])
      throw ParseError(lines.back().number,
                       "missing vertex " + Permutation::unrank(n, r).str());
    by_rank.push_back(std::move(*table[r]));
  }
  return Section::from_table(n, d, std::move(by_rank), cap);
}

// Witness: one line per generator, "[pi] : [kappa]" (cycle form accepted).

inline std::string emit_witness(const WeakSymmetryWitness& w) {
  std::string out;
  for (std::size_t k = 0; k < w.generators.size(); ++k)
    out += w.generators[k].str() + " : " + w.kappas[k].str() + "\n";
  return out;
}

inline WeakSymmetryWitness parse_witness(std::string_view input, int n, int d) {
  WeakSymmetryWitness w;
  for (const auto& l : text::read_lines(input)) {
    const auto colon = l.raw.find(':');
    if (colon == std::string::npos) throw ParseError(l.number, "expected '[pi] : [kappa]'");
    w.generators.push_back(text::permutation_at(l, l.raw.substr(0, colon), n));
    w.kappas.push_back(text::permutation_at(l, l.raw.substr(colon + 1), d));
    if (w.generators.back().degree() != n || w.kappas.back().degree() != d)
      throw ParseError(l.number, "generator or kappa has the wrong degree");
  }
  return w;
}

// Symmetry certificate.

inline std::string emit_symmetry_certificate(const SymmetryCertificate& c) {
  return "symmetry-certificate\npi " + c.pi.str() + "\nkappa " + c.kappa.str() + "\nrho-eq " +
         c.rho_eq.str() + "\nrho-ineq " + c.rho_ineq.str() + "\nend\n";
}

inline SymmetryCertificate parse_symmetry_certificate(std::string_view input) {
  text::Cursor cur(text::read_lines(input));
  cur.expect("symmetry-certificate");
  SymmetryCertificate c;
  auto field = [&](const char* key) {
    const text::Line& l = cur.expect(key);
    if (l.tokens.size() != 2) throw ParseError(l.number, std::string("malformed ") + key);
    return text::permutation_at(l, l.tokens[1]);
  };
  c.pi = field("pi");
  c.kappa = field("kappa");
  c.rho_eq = field("rho-eq");
  c.rho_ineq = field("rho-ineq");
  cur.expect("end");
  return c;
}

// Violation certificate: self-contained, re-checkable against an extension.

inline std::string emit_violation_certificate(const ViolationCertificate& c) {
  std::ostringstream out;
  out << "violation-certificate\n";
  out << "n " << c.n << "\n";
  out << "w " << c.w << "\n";
  out << "zeta " << c.zeta.str() << "\n";
  out << "epsilon " << c.epsilon.str() << "\n";
  out << "facet " << subset_str(c.facet()) << " rhs " << c.facet_rhs.str() << "\n";
  out << "projected " << c.projected_value.str() << "\n";
  out << "y " << text::join(c.y) << "\n";
  out << "end\n";
  return out.str();
}

inline ViolationCertificate parse_violation_certificate(std::string_view input) {
  text::Cursor cur(text::read_lines(input));
  cur.expect("violation-certificate");
  ViolationCertificate c;
  auto single = [&](const char* key) -> const text::Line& {
    const text::Line& l = cur.expect(key);
    if (l.tokens.size() != 2) throw ParseError(l.number, std::string("malformed ") + key);
    return l;
  };
  {
    const auto& l = single("n");
    c.n = static_cast<int>(text::integer_at(l, l.tokens[1]));
  }
  {
    const auto& l = single("w");
    c.w = static_cast<int>(text::integer_at(l, l.tokens[1]));
    if (c.w < 1 || c.w >= c.n) throw ParseError(l.number, "w outside [1, n-1]");
  }
  {
    const auto& l = single("zeta");
    c.zeta = text::permutation_at(l, l.tokens[1], c.n);
  }
  {
    const auto& l = single("epsilon");
    c.epsilon = text::rational_at(l, l.tokens[1]);
  }
  {
    const auto& l = cur.expect("facet");
    if (l.tokens.size() != 4 || l.tokens[2] != "rhs") throw ParseError(l.number, "malformed facet");
    if (l.tokens[1] != subset_str((SubsetMask{1} << c.w) - 1))
      throw ParseError(l.number, "facet must be {1,...,w}");
    c.facet_rhs = text::rational_at(l, l.tokens[3]);
  }
  {
    const auto& l = single("projected");
    c.projected_value = text::rational_at(l, l.tokens[1]);
  }
  {
    const auto& l = cur.expect("y");
    if (l.tokens.size() < 2) throw ParseError(l.number, "empty y");
    c.y = text::coefficients(l, 1, l.tokens.size() - 1);
  }
  cur.expect("end");
  return c;
}

inline std::string emit_audit_report(const AuditReport& r) {
  std::ostringstream out;
  out << "audit\n";
  out << "n " << r.n << "\n";
  out << "d " << r.d << "\n";
  out << "bound " << r.bound.str() << "\n";
  out << "verdict " << to_string(r.verdict) << "\n";
  if (!r.note.empty()) out << "note " << r.note << "\n";
  if (r.partition) {
    std::istringstream lines(r.partition->str());
    std::string line;
    while (std::getline(lines, line)) out << "partition " << line << "\n";
  }
  if (r.certificate) out << emit_violation_certificate(*r.certificate);
  out << "end\n";
  return out.str();
}

}  // namespace permext

#endif  // PERMEXT_TEXT_FORMAT_HPP
