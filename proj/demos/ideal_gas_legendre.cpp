// Free energy of the ideal gas U(S,V) = exp(S) V^(-2/3) by a numerical
// Legendre transform in S, next to the closed form T (1 - log T - 2/3 log V).

#include <cmath>
#include <cstdio>

#include "contactgeo/contactgeo.hpp"

using namespace contactgeo;

int main() {
  const auto u = make_relation("U", {"S", "V"}, "exp(S)*V^(-2/3)", {{0.5, 2.0}, {0.5, 2.0}});
  const FundamentalRelation f = legendre_potential(u, 1);
  std::printf("%8s %8s %20s %20s\n", "T", "V", "F numeric", "F closed form");
  for (double s : {0.7, 1.0, 1.5})
    for (double v : {0.8, 1.6}) {
      const double t = potential_jet(u, {s, v}).gradient(0);
      const double closed = t * (1 - std::log(t) - 2.0 / 3.0 * std::log(v));
      std::printf("%8.4f %8.4f %20.15f %20.15f\n", t, v, potential_jet(f, {t, v}).value, closed);
    }
  const Eigen::MatrixXd h = pullback_metric_on_E(u, metric_from_structure(PhaseSpace(2), MetricKind::Reflection), {1.0, 1.0});
  std::printf("pullback of g_r at (S,V) = (1,1):\n[[% .12f, % .12f], [% .12f, % .12f]]\n", h(0, 0), h(0, 1), h(1, 0), h(1, 1));
}
