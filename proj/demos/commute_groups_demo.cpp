// Decides commutation for a few group pairs and prints the smallest
// counterexample subgroup when the verdict is negative.

#include <iostream>

#include "limcolim/commute.hpp"

namespace groups = limcolim::groups;
namespace commute = limcolim::commute;

int main() {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"c2", "c3"}, {"c2", "c2"}, {"c3", "s3"}, {"s3", "c3"}, {"a4", "klein4"}};

  for (const auto& [gn, hn] : pairs) {
    const auto g = groups::group_preset(gn);
    const auto h = groups::group_preset(hn);
    const auto rep = commute::decide_commute(g, h);
    std::cout << "limits over " << gn << " vs colimits over " << hn << ": "
              << (rep.commutes ? "commute" : "do not commute") << "\n";
    if (!rep.commutes) {
      const auto w = commute::group_witness(g, h);
      std::cout << "  witness subgroup of the product: {";
      for (size_t i = 0; i < w.subgroup.elements.size(); ++i)
        std::cout << (i ? "," : "") << w.subgroup.elements[i];
      std::cout << "}  comparison " << w.report.colim_lim_size << " -> "
                << w.report.lim_colim_size << "\n";
    }
  }
  return 0;
}
