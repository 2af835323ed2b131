#pragma once

#include <json.hpp>

#include "loosetile/absorbing.hpp"
#include "loosetile/almost_tiling.hpp"
#include "loosetile/constructions.hpp"
#include "loosetile/extremal.hpp"
#include "loosetile/factor.hpp"
#include "loosetile/lattice.hpp"

namespace loosetile {

using Json = nlohmann::ordered_json;  // insertion-ordered keys: byte-stable output

Json copy_to_json(const CycleCopy& c);
CycleCopy copy_from_json(const Json& j);

Json tiling_to_json(const Tiling& t, int n);
Tiling tiling_from_json(const Json& j);

Json report_to_json(const RobustReport& r);

Json almost_to_json(const AlmostResult& r);

Json family_to_json(const AbsorbingFamily& fam, const FamilyStats& stats, int n);

Json classification_to_json(const Classification& c);
Json trace_to_json(const PipelineTrace& t, int n);

Json instance_sidecar(const LabeledInstance& inst);

}  // namespace loosetile
