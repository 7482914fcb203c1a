#pragma once

#include <cstdint>

namespace limcolim {

// All knobs that bound exhaustive searches. Every cap violation surfaces as
// a SizeCapExceeded error rather than a silent truncation.
struct Config {
  // Exhaustive category scans (conical, sifted, cocone and diagram searches).
  int max_exhaustive_objects = 10;
  int max_exhaustive_morphisms = 64;

  // A limit computation refuses to run when the product of the carrier
  // sizes exceeds this.
  std::uint64_t max_limit_families = 1000000;

  // Group algebra. max_group_order bounds quotient/subquotient catalogs;
  // max_product_group_order bounds full subgroup enumeration, which also
  // runs on direct products.
  int max_group_order = 60;
  int max_product_group_order = 360;

  // Product categories larger than this (by morphism count) are refused.
  int max_product_morphisms = 4096;

  // Bounded counterexample search.
  int max_carrier_total = 64;
  int max_samples = 1000;
  std::uint64_t seed = 0x5EEDC0DE5EEDC0DEull;

  // Accepted as a hint only; the engine is sequential and its output is
  // byte-identical at any setting.
  int parallelism = 1;
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

}  // namespace limcolim
