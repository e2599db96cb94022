// Builds K(s1^3, s1^3) from two solved torus-knot certificates and prints the result.

#include <iostream>
#include <variant>

#include "kch/kch.hpp"

int main() {
  const kch::BraidWord trefoil(2, {1, 1, 1});
  const auto solved = kch::solve_full_rank(trefoil);
  const auto& cert = std::get<kch::Certificate>(solved);
  std::cout << "trefoil: residual " << std::max(cert.residual_L, cert.residual_R) << ", rank " << cert.rank << "\n";

  const kch::Certificate sat = kch::construct_satellite_aug(cert, cert, trefoil, trefoil);
  std::cout << "satellite braid: " << kch::to_string(sat.braid) << "\n"
            << "constructed residual " << std::max(sat.residual_L, sat.residual_R) << ", rank " << sat.rank << " of "
            << sat.braid.strands() << "\n";
  return sat.accepted() && sat.rank == sat.braid.strands() ? 0 : 1;
}
