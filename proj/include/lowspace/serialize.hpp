#pragma once

// Versioned JSON documents for every structure. Keys are emitted in sorted
// order, so equal structures serialize to identical bytes. Loaders rebuild
// the derived indexes and throw SerializationError on malformed input.

#include <string>
#include <string_view>

#include "json.hpp"
#include "lowspace/labeling.hpp"
#include "lowspace/pruned_oracle.hpp"
#include "lowspace/routing.hpp"
#include "lowspace/sparse_cover.hpp"

namespace lowspace {

inline constexpr int kFormatVersion = 1;

nlohmann::json cover_to_json(const SparseCover& cover);
SparseCover cover_from_json(const nlohmann::json& doc);

nlohmann::json label_to_json(const VertexLabel& label);

nlohmann::json labeling_to_json(const LabelingScheme& scheme);
LabelingScheme labeling_from_json(const nlohmann::json& doc);

nlohmann::json oracle_to_json(const PrunedOracle& oracle);
PrunedOracle oracle_from_json(const nlohmann::json& doc);

nlohmann::json routing_to_json(const RoutingScheme& scheme);
RoutingScheme routing_from_json(const nlohmann::json& doc);

std::string serialize(const SparseCover& cover);
std::string serialize(const LabelingScheme& scheme);
std::string serialize(const PrunedOracle& oracle);
std::string serialize(const RoutingScheme& scheme);

SparseCover deserialize_cover(std::string_view text);
LabelingScheme deserialize_labeling(std::string_view text);
PrunedOracle deserialize_oracle(std::string_view text);
RoutingScheme deserialize_routing(std::string_view text);

}  // namespace lowspace
