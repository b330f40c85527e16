#pragma once
#include <json.hpp>

#include "hnspec/analysis.hpp"
#include "hnspec/darboux.hpp"
#include "hnspec/problem.hpp"

namespace hnspec {

using Json = nlohmann::json;

Json toJson(const BoundaryFunction& f);
BoundaryFunction boundaryFromJson(const Json& j);

// expr / samples / layer; closures are not serializable (ValidationError)
Json toJson(const Potential& q);
PotentialPtr potentialFromJson(const Json& j);

Json toJson(const Problem& p);
Problem problemFromJson(const Json& j);

Json toJson(const SpectralData& d);
SpectralData spectralDataFromJson(const Json& j);

// the layer itself travels with the child problem's potential
Json toJson(const TransformRecord& r);
Json toJson(const DescentStep& s);
Json toJson(const TraceEstimate& t);
Json toJson(const AsymptoticFit& a);

}  // namespace hnspec
