#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pcaerg/boundary_chain.hpp"
#include "pcaerg/condition.hpp"
#include "pcaerg/envelope.hpp"
#include "pcaerg/stats.hpp"
#include "pcaerg/sweep.hpp"

namespace pcaerg::io {

/// 17 significant digits; +inf as "inf".
std::string format_real(double x);
/// Inverse of format_real. Throws InvalidInput on malformed text.
double parse_real(std::string_view text);

/// Parses "p00,p01,p10,p11" (commas or semicolons).
ParamQuad<double> parse_quad(std::string_view text);
std::string format_quad(const ParamQuad<double>& q, char sep = ';');

nlohmann::json to_json(const ConditionReport<double>& rep);
nlohmann::json to_json(const DerivedParams<double>& d);
nlohmann::json to_json(const BoundaryChain<double>& c);
nlohmann::json to_json(const DriftEstimate& e);
nlohmann::json to_json(const VolumeEstimate& v);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const RenewalSummary& s);
nlohmann::json to_json(const RefinedRow& row);

VolumeEstimate volume_from_json(const nlohmann::json& j);
SweepRow sweep_row_from_json(const nlohmann::json& j);

/// code,eps,gamma0,gamma1,lhs,rhs,holds,drift_bound
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// samples,hits,fraction,ci_low,ci_high,seed
void write_volume_csv(std::ostream& out, const VolumeEstimate& v);
VolumeEstimate read_volume_csv(std::istream& in);

/// eps,mean_s1,mean_00,drift_bound,empirical_drift,stderr
void write_refined_csv(std::ostream& out, const std::vector<RefinedRow>& rows);

/// step,q_density_num,q_density_den
void write_density_csv(std::ostream& out, const std::vector<DensityPoint>& series);

}  // namespace pcaerg::io
