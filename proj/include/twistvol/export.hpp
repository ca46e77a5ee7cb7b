#pragma once

#include <json.hpp>

#include "twistvol/bracket.hpp"
#include "twistvol/diagram.hpp"
#include "twistvol/states.hpp"
#include "twistvol/tube.hpp"
#include "twistvol/volbounds.hpp"

namespace twistvol {

using Json = nlohmann::ordered_json;

Json to_json(const LinkDiagram& d);
Json to_json(const LinkDiagram& d, const TwistDecomposition& t);
Json to_json(const StateGraph& g);
Json to_json(const Geography& g);
/// {variable, terms: [[exponent, coefficient], ...] descending, alpha, beta,
/// betaPrime, alphaPrime}, summary at the given exponent step.
Json to_json(const LaurentPoly& p, int step);
Json to_json(const StoimenowReport& r);
Json to_json(const CoefficientBoundsReport& r);
Json to_json(const VolumeBound& b);
Json to_json(const SlopeLengthEstimate& s);
Json to_json(const NzComparison& n);
Json to_json(const CensusTable& t);
Json to_json(const TubeCertificate& c);
/// Profile samples; every `stride`-th sample plus the endpoints.
Json to_json(const TubeProfile& p, std::size_t stride = 1);

}  // namespace twistvol
