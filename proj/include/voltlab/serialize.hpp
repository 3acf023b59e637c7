#pragma once

#include <json.hpp>

#include "voltlab/causality.hpp"
#include "voltlab/cointegration.hpp"
#include "voltlab/descriptive.hpp"
#include "voltlab/numerics.hpp"
#include "voltlab/unitroot.hpp"
#include "voltlab/volatility.hpp"

namespace voltlab {

using Json = nlohmann::json;

/// Finite values become numbers, NaN becomes null and infinities the
/// strings "inf" / "-inf", so the document stays valid JSON.
Json json_number(double v);
/// Inverse of json_number.
double number_from_json(const Json& j);

void to_json(Json& j, const SummaryStats& s);
void to_json(Json& j, const CorrelogramRow& r);
void to_json(Json& j, const CoefficientSummary& s);
void to_json(Json& j, const CorrelogramSummary& s);
void to_json(Json& j, const OlsFit& f);
void to_json(Json& j, const CriticalValues& c);
void to_json(Json& j, const AdfResult& r);
void to_json(Json& j, const ArchLmResult& r);
void to_json(Json& j, const VolModelSpec& s);
void to_json(Json& j, const VolModelFit& f);
void to_json(Json& j, const EgResult& r);
void to_json(Json& j, const JohansenResult& r);
void to_json(Json& j, const EcmFit& f);
void to_json(Json& j, const GrangerResult& r);

}  // namespace voltlab
