#pragma once

#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "inexact/mobs.hpp"

namespace inexact {

using json = nlohmann::ordered_json;

/// 12 significant digits. A value in (0, 1) that would print as 0 or 1
/// gets full precision instead. Infinity prints as "inf".
std::string format_number(double x);

/// x rounded to 12 significant digits, so the JSON writer prints it short.
/// Same 0/1 rule as format_number.
json number_json(double x);
double number_from_json(const json& j);

/// Header b_{n-1},...,b_0,output then one row per input in index order.
std::string truth_table_csv(const TruthTable& table);
/// Inverse of truth_table_csv. Lines starting with '#' are ignored.
TruthTable parse_truth_table_csv(std::string_view text);

json energy_to_json(const EnergyVector& energy);
/// Budget defaults to the entry sum.
EnergyVector energy_from_json(const json& j);

json permutation_to_json(std::span<const std::uint32_t> p);
Permutation permutation_from_json(const json& j);

json group_to_json(const PermutationGroup& group);
PermutationGroup group_from_json(const json& j);

json estimate_fields(const Estimate& e, const char* value_name);

json error_report_to_json(const ErrorReport& report);
json quality_to_json(const QualityResult& q, MetricKind metric);
json allocation_to_json(const AllocationResult& a);
json mobs_to_json(const MobsResult& r);

/// problem,n,mobs,mode
std::string mobs_summary_csv(std::span<const MobsResult> results);

/// vdd,sigma,p
std::string curve_csv(std::span<const CurvePoint> points);

}  // namespace inexact
