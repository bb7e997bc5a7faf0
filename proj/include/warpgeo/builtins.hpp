#pragma once

#include <string>
#include <vector>

#include "warpgeo/immersion.hpp"
#include "warpgeo/submersion.hpp"
#include "warpgeo/warped.hpp"

namespace warpgeo::builtins {

// Named building blocks the CLI and the scenario files refer to.

// Warped products:
//   product              flat R^2 x R, psi = 1
//   polar-plane          (0,inf) x circle, psi(r) = r        (flat plane in polar form)
//   polar-space          (0,inf) x unit 2-sphere, psi(r) = r (flat R^3 in polar form)
//   hyperbolic-as-warped R x R, psi(t) = e^t                 (curvature -1)
//   polar-strip          (0,inf) x R, psi(r) = r             (cone unrolled)
wp::WarpedProduct warped_product(const std::string& name);
std::vector<std::string> warped_product_names();

// Immersions (parameters as documented in the README):
//   sphere-in-euclidean  round S^1(a) in R^2 or S^2(a) in R^3 (param dim, a)
//   sphere-in-product    S^2(a) in R^2 x R or S^3(a) in R^3 x R (param dim, a)
//   circle               unit circle in R^2
//   graph                sphere graph patch z = sqrt(1 - x^2 - y^2) in R^3
//   clifford-torus       flat torus patch in R^4 (param c)
//   fiber-slice          {x0} x fiber slice of a warped product
//   base-slice           base x {v0} slice of a warped product
Immersion immersion(const std::string& name, double a = 1.0, int dim = 2);
std::vector<std::string> immersion_names();

// Submersions:
//   product       R^2 x R -> R^2 with the product metric
//   warped        pi_X of a named warped product (polar-plane by default)
//   hopf-chart    chart of S^3(1) -> S^2(1/2)
sub::RiemannianSubmersion submersion(const std::string& name,
                                     const std::string& warped_name = "polar-plane");
std::vector<std::string> submersion_names();

}  // namespace warpgeo::builtins
