// Walks A = (1,2,3) through the pipeline by hand: Euler matrix of the
// exceptional collection, critical values of the mirror, numerical Stokes
// matrix, and the braid/sign moves that carry one into the other.

#include <iostream>

#include <stokes_euler/stokes_euler.hpp>

using namespace stokes_euler;

int main(int argc, char** argv) {
  int a[3] = {1, 2, 3};
  if (argc == 4)
    for (int i = 0; i < 3; ++i) a[i] = std::stoi(argv[i + 1]);

  try {
    const auto A = make_orbifold(a[0], a[1], a[2]);
    const auto euler = canonical_collection_euler_matrix(A);
    std::cout << A.label() << ", mu = " << A.mu << "\nchi =\n" << euler.chi.to_text();

    auto s = UnfoldingPoint::at_q(A, balanced_q(A));
    Mirror1D m = reduce_to_1d(A, s);
    try {
      critical_points_1d(m);
    } catch (const Error&) {
      s = perturb_arms(A, s, 7);  // off the bifurcation set
      m = reduce_to_1d(A, s);
    }

    const auto r = stokes_numeric(m);
    std::cout << "critical values (dominance order):\n";
    for (auto w : r.values()) std::cout << "  " << format_complex(w) << "\n";
    std::cout << "S =\n" << r.S.to_text() << "integer distance " << r.max_int_distance << ", residual " << r.residual << "\n";

    const auto found = equivalence_search(r.S, euler.chi);
    std::cout << "S -> chi: " << to_string(found.status);
    if (found.found()) std::cout << " via \"" << found.moves.to_text() << "\"";
    std::cout << "\n";
    return found.found() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
