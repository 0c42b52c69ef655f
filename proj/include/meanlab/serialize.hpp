#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "meanlab/gauss.hpp"
#include "meanlab/grid.hpp"
#include "meanlab/order.hpp"
#include "meanlab/theory.hpp"

namespace meanlab {

using json = nlohmann::ordered_json;

json to_json(const GridSpec& grid);
json to_json(const IterationResult& result);
json to_json(const ContractionReport& report);
json to_json(const OrderEstimate& estimate);
json to_json(const PowerGrowthReport& report);
json to_json(const VerificationReport& report);

/// CSV dump with header "u,phi"; rows in sample order.
std::string to_csv(const std::vector<PhiSample>& samples);

}  // namespace meanlab
