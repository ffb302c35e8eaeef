#pragma once

#include <string>

#include <json.hpp>

#include "gaussweyl/bounds.hpp"
#include "gaussweyl/plane_map.hpp"
#include "gaussweyl/probe.hpp"
#include "gaussweyl/spectral_oracle.hpp"
#include "gaussweyl/weyl_kernel.hpp"

namespace gaussweyl {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

/// "re,im,member" rows, plus an "overlay" column when an overlay sampled on
/// the same grid is given. Throws DomainError when the grids differ.
std::string region_csv(const RegionSample& sample, const RegionSample* overlay = nullptr);

/// Pixel map of the sample: region red, overlay inside the region orange,
/// overlay outside the region blue, background light grey.
std::string region_svg(const RegionSample& sample, const RegionSample* overlay = nullptr,
                       const std::string& title = "");

/// Non-finite numbers are written as null.
Json json_number(double x);

Json to_json(const GaussianKernelForm& k);
GaussianKernelForm kernel_from_json(const Json& j);

Json to_json(const HermiteExpansion& e);
HermiteExpansion expansion_from_json(const Json& j);

Json to_json(const SchurReport& r);
Json to_json(const ExpBoundReport& r);
Json to_json(const RatioReport& r);

}  // namespace gaussweyl
