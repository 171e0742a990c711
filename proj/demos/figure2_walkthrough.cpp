// Builds the Gaussian-bump system, checks the hypotheses, certifies its cycle
// and splits the cycle into the four arcs between curve crossings.
//
// Usage: figure2_walkthrough [c1 d1 e1 c2 d2 e2]

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "lcycle/lcycle.hpp"

int main(int argc, char** argv) {
  lcycle::BumpParams p = lcycle::figure2_params();
  if (argc == 7) {
    double* fields[] = {&p.c1, &p.d1, &p.e1, &p.c2, &p.d2, &p.e2};
    for (int i = 0; i < 6; ++i) *fields[i] = std::atof(argv[i + 1]);
  } else if (argc != 1) {
    std::cerr << "usage: " << argv[0] << " [c1 d1 e1 c2 d2 e2]\n";
    return 2;
  }

  const auto cons = lcycle::check_constraints(p);
  std::cout << "r = " << cons.r << ", equal radius " << (cons.equal_radius ? "yes" : "no")
            << ", slope bounds " << cons.slope_bound[0] << " and " << cons.slope_bound[1] << " (need < 0.5)\n";

  const auto sys = lcycle::build_bump_system(p);
  const double r = p.r();
  const auto report = lcycle::full_report(sys, {-2 * r, 2 * r, -2 * r, 2 * r});
  for (const auto& e : report.entries) std::cout << "  " << std::setw(3) << e.key << ' ' << to_string(e.verdict) << '\n';

  const auto a = lcycle::analyze_cycles(sys, 0.05, 2 * r, 64, {});
  std::cout << a.scan.sign_changes.size() << " bracket(s), " << a.certificates.size() << " cycle(s), "
            << to_string(a.verdict.verdict) << '\n';
  std::cout << std::setprecision(12);
  for (const auto& c : a.certificates) {
    std::cout << "cycle through x* = " << c.section_x << ", period " << c.period << ", dP/dx " << c.stability_multiplier
              << ", I_gamma " << c.I_gamma << '\n';
    try {
      const auto arcs = lcycle::arc_split(sys, c);
      std::cout << "  A (" << arcs.A.x << ", " << arcs.A.y << ")  B (" << arcs.B.x << ", " << arcs.B.y << ")\n"
                << "  C (" << arcs.C.x << ", " << arcs.C.y << ")  D (" << arcs.D.x << ", " << arcs.D.y << ")\n"
                << "  int gF: D->A " << arcs.I_DA << ", A->B " << arcs.I_AB << ", B->C " << arcs.I_BC << ", C->D "
                << arcs.I_CD << '\n';
    } catch (const lcycle::WrongCrossingCount& e) {
      std::cout << "  " << e.what() << '\n';
    }
  }
  return report.pass() ? 0 : 1;
}
