// Ricci tensor of the contact metric g = eta⊗eta + 1/2 sum (dq⊗dq + dp⊗dp)
// at a random point, for n = 1..3, with the fitted eta-Einstein constants.

#include <cstdio>

#include "contactgeo/contactgeo.hpp"

using namespace contactgeo;

int main() {
  Sampler sampler(1);
  for (int n = 1; n <= 3; ++n) {
    const PhaseSpace s(n);
    const SymbolicMetricJet jet(s, metric_from_structure(s, MetricKind::ContactAcs).tensor);
    const PhasePoint x = sampler.point(s);
    const CurvatureReport rep = ricci(jet, x);
    std::printf("n=%d  lambda=%.12f  nu=%.12f  residual=%.3g\n", n, rep.lambda, rep.nu, rep.einstein_residual);
  }
}
