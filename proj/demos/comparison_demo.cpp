// Builds the two classical counterexample bifunctors and walks through their
// comparison maps element by element.

#include <iostream>

#include "limcolim/commute.hpp"

namespace fincat = limcolim::fincat;
namespace groups = limcolim::groups;
namespace commute = limcolim::commute;
namespace setfun = limcolim::setfun;

static void show(const setfun::ComparisonReport& r) {
  std::cout << "  colim of limits (" << r.colim_lim_size << " elements):\n";
  for (size_t k = 0; k < r.colim_lim_elements.size(); ++k)
    std::cout << "    " << r.colim_lim_elements[k] << "  ->  "
              << r.lim_colim_elements[static_cast<size_t>(r.map_table[k])] << "\n";
  std::cout << "  lim of colimits (" << r.lim_colim_size << " elements):\n";
  for (const auto& e : r.lim_colim_elements) std::cout << "    " << e << "\n";
  std::cout << "  injective=" << r.injective << " surjective=" << r.surjective
            << " bijective=" << r.bijective << "\n";
}

int main() {
  const auto pp = fincat::parallel_pair_category();

  std::cout << "quotiented two-coset bifunctor on (parallel_pair, span):\n";
  const auto f = commute::foltz_witness_auto(pp, fincat::span_category());
  show(f.report);

  std::cout << "\nhom-set bifunctor of a cocone-free diagram in c2:\n";
  const auto c = commute::cone_witness_auto(pp, groups::as_category(groups::group_preset("c2")));
  show(c.report);
  return 0;
}
