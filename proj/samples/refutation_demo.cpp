// A fabricated subspace extension with d = 12 < 15 at n = 6. The section
// is weakly symmetric, so the audit produces a point of Q whose projection
// violates a facet of the permutahedron.
#include <iostream>

#include "permext/audit.hpp"
#include "permext/text_format.hpp"

int main() {
  using namespace permext;
  const int n = 6;
  const Section s = Section::from_rule(n, 2 * n, [n](const Permutation& zeta) {
    const RatVector x = lambda_vertex(zeta);
    RatVector y(2 * n);
    for (int t = 0; t < n; ++t) {
      y[t] = x[t];
      y[n + t] = Rational(n + 1) - x[t];
    }
    return y;
  });

  SubspaceExtension e;
  e.m = n;
  e.d = 2 * n;
  e.lhs = RatMatrix(0, 2 * n);
  e.projection = RatMatrix(n, 2 * n);
  RatVector total(2 * n);
  for (int t = 0; t < n; ++t) {
    RatVector row(2 * n);
    row[t] = 1;
    row[n + t] = 1;
    e.lhs.append_row(row);
    e.rhs.push_back(n + 1);
    e.projection(t, t) = 1;
    total[t] = 1;
  }
  e.lhs.append_row(total);
  e.rhs.push_back(n * (n + 1) / 2);

  const auto witness = derive_weak_symmetry_witness(s, rho_generators(n));
  if (!witness) return 1;
  const AuditReport rep = audit_extension(e, s, *witness);
  std::cout << emit_audit_report(rep);
  return rep.verdict == Verdict::refuted ? 0 : 1;
}
