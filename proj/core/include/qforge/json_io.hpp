#pragma once

#include <json.hpp>

#include "qforge/certify.hpp"
#include "qforge/density.hpp"
#include "qforge/forge.hpp"

namespace qf {

using Json = nlohmann::json;

// Rationals travel as exact "num/den" strings (den omitted when 1).
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json point_json(const CurvePoint<Rational>& pt);  // {"x","y"} or "inf"
CurvePoint<Rational> point_from_json(const Json& j);

Json quad_ext_json(const QuadExt& x);
QuadExt quad_ext_from_json(const Json& j);  // {"a","b","d"} components

// Points with coordinates in Q(sqrt d): {"x": {a,b,d}, "y": {a,b,d}}.
bool is_quad_point_json(const Json& j);
CurvePoint<QuadExt> quad_point_from_json(const Json& j);
Json quad_point_json(const CurvePoint<QuadExt>& pt);

Json line_json(const CombinatorialLine& line);
Json forge_result_json(const ForgeResult& r);
Json forge_outcome_json(const ForgeOutcome& o);

Json scan_row_json(const ScanRow& row);
Json fp_scan_row_json(const FpScanRow& row);

Json density_report_json(const DensityReport& rep);
Json witness_json(const AvoidanceWitness& w);
Json prime_record_json(const PrimeRecord& rec);
Json sweep_aggregate_json(const SweepAggregate& agg);

Json certificate_json(const IndependenceCertificate& cert);
Json growth_report_json(const GrowthReport& rep);

// Shared curve/point text formats: "e1,e2,e3", "c0,c1,c2,c3", "x,y".
SplitCurve<Rational> parse_curve(const std::string& text);
QuarticCurve<Rational> parse_quartic(const std::string& text);
CurvePoint<Rational> parse_point(const std::string& text);

std::string curve_str(const SplitCurve<Rational>& c);
std::string point_str(const CurvePoint<Rational>& pt);

}  // namespace qf
