// Builds the Birkhoff formulation for n = 4, certifies its projection and
// finds a symmetry certificate for the transposition (1 2).
#include <iostream>

#include "permext/formulation.hpp"
#include "permext/symmetry.hpp"
#include "permext/text_format.hpp"

int main() {
  using namespace permext;
  const int n = 4;
  const Formulation f = build_birkhoff_extension(n);
  std::cout << "d = " << f.d << ", equations = " << f.num_eq()
            << ", inequalities = " << f.num_ineq() << "\n";

  const ProjectionReport rep = verify_projection(f, permutahedron_facets(n));
  std::cout << "projection " << (rep.passed() ? "verified" : "FAILED") << " ("
            << rep.vertices_checked << " vertices, " << rep.facets_checked << " facets)\n";

  const auto cert = find_symmetry_certificate(f, Permutation::parse("(1 2)", n));
  if (!cert) return 1;
  std::cout << emit_symmetry_certificate(*cert);
  return verify_symmetry_certificate(f, *cert) ? 0 : 1;
}
