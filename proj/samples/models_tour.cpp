// Walk through one family: build it, check positivity, read off a projective model.
#include <iostream>

#include "k3even/models.hpp"

using namespace k3even;

int main() {
  NSFamily f = NSFamily::L(4);  // L^2 = 8
  IntegerLattice ns = make(f);
  std::cout << f.symbol() << ": rank " << ns.rank() << ", discriminant " << discriminant_group(ns).str() << "\n";

  for (const char* text : {"L", "L-Nhat", "L-N1-N2-N3-N4"}) {
    FrameVector D = parse_divisor(f, ns, text);
    auto rep = classify_positivity(ns, D);
    std::cout << "  " << text << ": D^2 = " << rep.self_intersection << ", " << to_string(rep.status) << "\n";
  }

  auto m = model_descriptor(f, "L-Nhat");
  std::cout << "  phi_{L-Nhat}: " << to_string(m.map_kind) << " to " << m.target() << ", degree " << m.degree << ", N_i become "
            << m.even_set_images.front() << "s\n";

  auto fib = fibration_from_lattice(f, "L-N1-N2-N3-N4");
  std::cout << "  |L-N1-N2-N3-N4|: elliptic, " << fib.fibers.i1 << " I1 + " << fib.fibers.i2 << " I2 fibres\n";

  std::cout << "  partner: " << ns_correspondence(f).symbol() << "\n";

  auto ci = parse_complete_intersection("P4xP2: (2,0)+(1,1)^3");
  std::cout << ci.str() << " has intersection matrix " << intersection_matrix(ci).str() << "\n";
}
