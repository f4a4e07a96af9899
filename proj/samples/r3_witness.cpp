// Exhaustively confirms R(3) = 6 and prints a triangle-free colouring of K5.

#include <iostream>

#include "ramseyqubo/ramseyqubo.hpp"

using namespace ramseyqubo;

int main() {
  const auto k5 = brute_force(build_ramsey_pubo(5, 3));
  const auto k6 = brute_force(build_ramsey_pubo(6, 3));
  std::cout << "min monochromatic triangles: K5 " << k5.min_value << ", K6 " << k6.min_value
            << '\n';

  const auto c = coloring_from_assignment(ramsey_registry(5), k5.argmin);
  write_coloring(std::cout, c);
  return certify_r_lower_bound(5, 3, c) && k6.min_value > 0 ? 0 : 1;
}
