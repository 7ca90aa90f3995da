#ifndef PERMEXT_CLI_HPP
#define PERMEXT_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permext/audit.hpp"
#include "permext/errors.hpp"
#include "permext/formulation.hpp"
#include "permext/perm_group.hpp"
#include "permext/polytope.hpp"
#include "permext/section.hpp"
#include "permext/symmetry.hpp"
#include "permext/text_format.hpp"

namespace permext {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInconclusive = 2, kExitUsage = 64 };

namespace cli_detail {

/// Thrown for bad arguments detected after parsing (unreadable files, ...).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

inline void spit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

/// "prefix:N" -> N, or nullopt when `spec` does not start with prefix.
inline std::optional<int> builtin(const std::string& spec, const std::string& prefix) {
  if (spec.rfind(prefix + ":", 0) != 0) return std::nullopt;
  const std::string num = spec.substr(prefix.size() + 1);
  try {
    std::size_t pos = 0;
    const int n = std::stoi(num, &pos);
    if (pos == num.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw UsageError("malformed '" + spec + "'");
}

inline ExtensionFile load_extension(const std::string& spec, std::istream& in) {
  if (const auto n = builtin(spec, "birkhoff-z")) return {std::nullopt, birkhoff_z_extension(*n)};
  if (const auto n = builtin(spec, "birkhoff")) return {build_birkhoff_extension(*n), std::nullopt};
  return parse_extension(slurp(spec, in));
}

inline Section load_section(const std::string& spec, int cap, std::istream& in) {
  if (const auto n = builtin(spec, "birkhoff")) return canonical_birkhoff_section(*n, cap);
  return parse_section(slurp(spec, in), cap);
}

inline std::vector<Permutation> parse_generators(const std::string& spec, int n) {
  if (spec == "rho") return rho_generators(n);
  std::vector<Permutation> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t semi = spec.find(';', pos);
    if (semi == std::string::npos) semi = spec.size();
    out.push_back(Permutation::parse(spec.substr(pos, semi - pos), n));
    pos = semi + 1;
  }
  return out;
}

inline void print_projection_report(const ProjectionReport& rep, std::ostream& out) {
  out << "vertices " << rep.vertices_checked - rep.coverage_failures.size() << "/"
      << rep.vertices_checked << " covered\n";
  out << "facets " << rep.facets_checked << " checked\n";
  for (const auto& c : rep.coverage_failures) out << "uncovered vertex " << c.vertex << "\n";
  for (const auto& f : rep.facet_failures) out << "facet " << f.name() << ": " << f.detail << "\n";
  out << (rep.passed() ? "PASS" : "FAIL") << "\n";
}

}  // namespace cli_detail

/**
 * Entry point of the command-line tool. `args` excludes the program name.
 * Returns 0 (verified or consistent), 1 (refuted or failed), 2 (inconclusive)
 * or 64 (usage, parse or cap error).
 */
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Extended formulations of the permutahedron: construction, verification, audit",
               "permext"};
  app.require_subcommand(1);
  int cap = 7;
  unsigned jobs = 1;
  app.add_option("--cap", cap, "largest n for exhaustive enumeration")->capture_default_str();
  app.add_option("--jobs", jobs, "parallel LP checks")->capture_default_str();

  int n = 0;
  std::string file = "-";
  std::string target, pi_text, cert_path, section_spec, gens = "rho", extension_spec,
      witness_path, certificate_out, check_path;

  auto* gen_facets = app.add_subcommand("gen-facets", "emit the facet system of the permutahedron");
  gen_facets->add_option("n", n)->required()->check(CLI::Range(2, 30));
  auto* gen_birkhoff = app.add_subcommand("gen-birkhoff", "emit the Birkhoff formulation");
  gen_birkhoff->add_option("n", n)->required()->check(CLI::PositiveNumber);
  auto* gen_z = app.add_subcommand("gen-birkhoff-z", "emit the z-only Birkhoff subspace extension");
  gen_z->add_option("n", n)->required()->check(CLI::PositiveNumber);
  auto* to_sub = app.add_subcommand("to-subspace", "convert a formulation to a subspace extension");
  to_sub->add_option("file", file, "formulation file, '-' for stdin");
  auto* verify_proj = app.add_subcommand("verify-projection", "certify p(Q) = permutahedron");
  verify_proj->add_option("file", file, "extension file, '-' for stdin");
  verify_proj->add_option("--target", target, "perm:N")->required();
  auto* verify_sym = app.add_subcommand("verify-symmetry", "find or check a symmetry certificate");
  verify_sym->add_option("file", file, "extension file, '-' for stdin");
  verify_sym->add_option("--pi", pi_text, "permutation of [n]")->required();
  verify_sym->add_option("--cert", cert_path, "certificate file to check");
  auto* derive = app.add_subcommand("derive-witness", "derive a weak-symmetry witness");
  derive->add_option("--section", section_spec, "section file or birkhoff:N")->required();
  derive->add_option("--gens", gens, "'rho' or permutations separated by ';'")
      ->capture_default_str();
  auto* audit = app.add_subcommand("audit", "run the lower-bound pipeline");
  audit->add_option("--extension", extension_spec, "extension file or birkhoff-z:N")->required();
  audit->add_option("--section", section_spec, "section file or birkhoff:N")->required();
  audit->add_option("--witness", witness_path, "witness file (default: derived from rho_v)");
  audit->add_option("--certificate", certificate_out, "write the violation certificate here");
  audit->add_option("--check-certificate", check_path, "re-check a violation certificate");
  auto* bounds = app.add_subcommand("bounds", "print the lower bounds for n");
  bounds->add_option("n", n)->required()->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"permext"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen_facets->parsed()) {
      out << emit_formulation(facets_as_formulation(permutahedron_facets(n)));
      return kExitOk;
    }
    if (gen_birkhoff->parsed()) {
      out << emit_formulation(build_birkhoff_extension(n));
      return kExitOk;
    }
    if (gen_z->parsed()) {
      out << emit_subspace(birkhoff_z_extension(n));
      return kExitOk;
    }
    if (to_sub->parsed()) {
      out << emit_subspace(parse_extension(slurp(file, in)).as_subspace());
      return kExitOk;
    }
    if (verify_proj->parsed()) {
      const auto tn = builtin(target, "perm");
      if (!tn) throw UsageError("--target must be perm:N");
      const ExtensionFile ext = parse_extension(slurp(file, in));
      const FacetSystem fs = permutahedron_facets(*tn);
      const ProjectionOptions opt{cap, jobs};
      const ProjectionReport rep = ext.formulation ? verify_projection(*ext.formulation, fs, opt)
                                                   : verify_projection(*ext.subspace, fs, opt);
      print_projection_report(rep, out);
      return rep.passed() ? kExitOk : kExitFailed;
    }
    if (verify_sym->parsed()) {
      const Formulation f = parse_extension(slurp(file, in)).as_formulation_form();
      const Permutation pi = Permutation::parse(pi_text, f.m);
      if (!cert_path.empty()) {
        const SymmetryCertificate cert = parse_symmetry_certificate(slurp(cert_path, in));
        if (cert.pi != pi) {
          out << "REJECTED certificate is for " << cert.pi.str() << "\n";
          return kExitFailed;
        }
        const bool ok = verify_symmetry_certificate(f, cert);
        out << (ok ? "VERIFIED" : "REJECTED") << "\n";
        return ok ? kExitOk : kExitFailed;
      }
      const auto cert = find_symmetry_certificate(f, pi);
      if (!cert) {
        out << "no certificate for " << pi.str() << "\n";
        return kExitFailed;
      }
      out << emit_symmetry_certificate(*cert);
      return kExitOk;
    }
    if (derive->parsed()) {
      const Section s = load_section(section_spec, cap, in);
      const auto w = derive_weak_symmetry_witness(s, parse_generators(gens, s.n()));
      if (!w) {
        out << "no witness\n";
        return kExitFailed;
      }
      out << emit_witness(*w);
      return kExitOk;
    }
    if (audit->parsed()) {
      const SubspaceExtension e = load_extension(extension_spec, in).as_subspace();
      const Section s = load_section(section_spec, cap, in);
      if (!check_path.empty()) {
        const ViolationCertificate cert = parse_violation_certificate(slurp(check_path, in));
        auto why = certificate_defect(cert, e);
        if (!why) why = certificate_defect(cert, s);
        out << (why ? "REJECTED " + *why : std::string("VERIFIED")) << "\n";
        return why ? kExitFailed : kExitOk;
      }
      WeakSymmetryWitness w;
      if (!witness_path.empty()) {
        w = parse_witness(slurp(witness_path, in), s.n(), s.d());
      } else {
        auto derived = derive_weak_symmetry_witness(s, rho_generators(s.n()));
        if (!derived) throw InvalidInput("no weak-symmetry witness for the rho_v generators");
        w = std::move(*derived);
      }
      const AuditReport rep = audit_extension(e, s, w);
      out << emit_audit_report(rep);
      if (rep.certificate && !certificate_out.empty())
        spit(certificate_out, emit_violation_certificate(*rep.certificate), out);
      switch (rep.verdict) {
        case Verdict::consistent: return kExitOk;
        case Verdict::refuted: return kExitFailed;
        case Verdict::inconclusive: return kExitInconclusive;
      }
    }
    if (bounds->parsed()) {
      out << "facets=" << permutahedron_facet_count(n).get_str()
          << " nonsym≥" << face_count_lower_bound(n).get_str()
          << " sym-vars≥" << symmetric_variable_bound(n).str()
          << " sym-total≥" << combined_lower_bound(n).str() << "\n";
      return kExitOk;
    }
  } catch (const permext::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace permext

#endif  // PERMEXT_CLI_HPP
