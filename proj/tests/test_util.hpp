#pragma once

#include "limcolim/fincat.hpp"

namespace test_util {

// Rebuilds a category through build_category so that directly-constructed
// tables (opposite, product, group views) get revalidated against the laws.
inline limcolim::fincat::FinCategory revalidate(const limcolim::fincat::FinCategory& c) {
  limcolim::fincat::RawCategory raw;
  raw.object_count = c.object_count;
  raw.morphisms = c.morphisms;
  raw.identity_of = c.identity_of;
  raw.tag = c.tag;
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f)) raw.compositions.push_back({g, f, c.compose(g, f)});
  return limcolim::fincat::build_category(raw);
}

}  // namespace test_util
