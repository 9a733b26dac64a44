#pragma once

#include <span>
#include <string>
#include <string_view>

#include "ceig/piezo_tensor.hpp"

namespace ceig {

/// Reference values reported in the literature for a bundled tensor, kept
/// verbatim so reports can show published vs computed side by side. The
/// published pair for BaNiO3 is known not to match what the bound formulas
/// give on its entry list; the computed values are the authoritative ones.
struct PublishedValues {
  double rho = 0.0;
  double rho_min = 0.0;
  double lambda_star = 0.0;
};

/// One bundled material tensor (n = 3), validated strictly at load.
struct NamedTensor {
  std::string key;
  PiezoTensor tensor;
  PublishedValues published;
};

/// All eight bundled tensors in their canonical order:
/// VFeSb, SiO2, Cr2AgBiO8, RbTaO3, NaBiS2, LiBiB2O5, KBi2F7, BaNiO3.
std::span<const NamedTensor> dataset_list();

/// Lookup by key, case-insensitive. Throws std::invalid_argument for
/// unknown keys.
const NamedTensor& dataset_get(std::string_view key);

}  // namespace ceig
