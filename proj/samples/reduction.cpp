// Reduces a few points of P^1 over Q_2 to the building of PGL_2 and prints
// their apartment coordinates.

#include <iostream>

#include "xbar/berkovich.hpp"

using namespace xbar;

int main() {
  PrimeContext ctx(2, 2, 2);
  LScalar one = LScalar::from_k(1, ctx);
  LScalar pi = LScalar::uniformizer(ctx);

  LFunctional z({one, pi}, ctx);
  BuildingPoint b = r_reduce_L_point(z);
  std::cout << "z = (1, pi): in Omega = " << std::boolalpha << in_omega(z) << ", interior = " << b.is_interior()
            << '\n';
  ApartmentPoint x = phi_inverse(b.representative());
  std::cout << "  apartment coordinates:";
  for (auto c : x.coords()) std::cout << ' ' << to_string(c);
  std::cout << '\n';

  PrimeContext k_ctx(2, 2, 1);
  BuildingPoint c = r_reduce_rational({1, 1}, k_ctx);
  std::cout << "z = (1, 1): interior = " << c.is_interior() << ", kernel =";
  for (const auto& v : c.kernel()) {
    std::cout << " (";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << to_string(v[i]);
    std::cout << ')';
  }
  std::cout << '\n';

  MonomialPoint gauss = MonomialPoint::gauss_point(k_ctx);
  Polynomial f(2);
  f.add_term({2, 0}, 2);
  f.add_term({1, 1}, 1);
  std::cout << "Gauss point: alpha(2 v1^2 + v1 v2) = " << alpha_evaluate(gauss, f) << '\n';
  std::cout << "r(Gauss point) is the origin: "
            << (r_reduce_monomial(gauss) == BuildingPoint(phi_from_apartment(ApartmentPoint::interior({0, 0}), k_ctx)))
            << '\n';
}
