#include "pcaerg/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pcaerg/errors.hpp"

namespace pcaerg::io {

using nlohmann::json;

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw InvalidInput("not a number: '" + s + "'");
  return v;
}

namespace {

std::vector<std::string> split(std::string_view line, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (seps.find(c) != std::string_view::npos) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

json real_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  return j.get<double>();
}

const char* state_name(BoundaryState3 s) {
  switch (s) {
    case BoundaryState3::Zero: return "0";
    case BoundaryState3::One: return "1";
    case BoundaryState3::Star: return "*";
  }
  return "?";
}

std::uint64_t parse_count(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("not a count: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

ParamQuad<double> parse_quad(std::string_view text) {
  const auto parts = split(text, ",;");
  if (parts.size() != 4) throw InvalidInput("expected four comma-separated probabilities: " + std::string(text));
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]), parse_real(parts[3])};
}

std::string format_quad(const ParamQuad<double>& q, char sep) {
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (k) s.push_back(sep);
    s += format_real(q(k / 2, k % 2));
  }
  return s;
}

json to_json(const ConditionReport<double>& rep) {
  return {{"gamma0", rep.gamma0}, {"gamma1", rep.gamma1}, {"lhs", rep.lhs},
          {"rhs", rep.rhs},       {"holds", rep.holds},   {"drift_bound", real_json(rep.drift_bound)}};
}

json to_json(const DerivedParams<double>& d) {
  json j;
  j["p"] = d.p;
  j["q"] = d.q;
  j["r"] = d.r;
  for (int i = 0; i < 2; ++i) {
    for (int x = 0; x < 2; ++x) {
      const std::string suffix = "_" + std::to_string(i) + "_" + std::to_string(x);
      j["p" + suffix] = d.p_side(i, x);
      j["q" + suffix] = d.q_side(i, x);
      j["r" + suffix] = d.r_side(i, x);
      j["P" + suffix] = d.P(i, x);
      j["Q" + suffix] = d.Q(i, x);
    }
    j["P_" + std::to_string(i)] = d.P_star(i);
    j["Q_" + std::to_string(i)] = d.Q_star(i);
    j["R_" + std::to_string(i)] = d.R_star(i);
  }
  j["R_x0"] = d.R(0);
  j["R_x1"] = d.R(1);
  return j;
}

json to_json(const BoundaryChain<double>& c) {
  json rows = json::array();
  for (int a = 0; a < 3; ++a) rows.push_back({c.rows(a, 0), c.rows(a, 1), c.rows(a, 2)});
  return {{"side", c.side == Side::RightBoundary ? "right" : "left"},
          {"states", {state_name(BoundaryState3::Zero), state_name(BoundaryState3::One),
                      state_name(BoundaryState3::Star)}},
          {"rows", rows}};
}

json to_json(const DriftEstimate& e) {
  return {{"mean", e.mean}, {"stderr", e.std_error}, {"steps", e.steps}, {"seed", e.seed}};
}

json to_json(const VolumeEstimate& v) {
  return {{"samples", v.samples}, {"hits", v.hits},       {"fraction", v.fraction},
          {"ci_low", v.ci95_low}, {"ci_high", v.ci95_high}, {"seed", v.seed},
          {"degenerate", v.degenerate}};
}

VolumeEstimate volume_from_json(const json& j) {
  VolumeEstimate v;
  v.samples = j.at("samples").get<std::uint64_t>();
  v.hits = j.at("hits").get<std::uint64_t>();
  v.fraction = j.at("fraction").get<double>();
  v.ci95_low = j.at("ci_low").get<double>();
  v.ci95_high = j.at("ci_high").get<double>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.degenerate = j.value("degenerate", std::uint64_t{0});
  return v;
}

json to_json(const SweepRow& row) {
  json j;
  j["code"] = row.code ? row.code->str() : format_quad(row.params);
  j["eps"] = row.eps ? json(*row.eps) : json(nullptr);
  if (row.report) {
    j.update(to_json(*row.report));
  } else {
    j["error"] = "degenerate:" + row.error;
  }
  return j;
}

namespace {

void fill_params(SweepRow& row, const std::string& code_field) {
  if (code_field.size() == 4 && code_field.find_first_not_of("01") == std::string::npos) {
    row.code = CaCode::parse(code_field);
    if (!row.eps) throw InvalidInput("CA code row without eps");
    row.params = ca_with_error(*row.code, *row.eps);
  } else {
    row.params = parse_quad(code_field);
  }
}

}  // namespace

SweepRow sweep_row_from_json(const json& j) {
  SweepRow row;
  if (!j.at("eps").is_null()) row.eps = j.at("eps").get<double>();
  fill_params(row, j.at("code").get<std::string>());
  if (j.contains("error")) {
    row.error = j.at("error").get<std::string>().substr(std::string("degenerate:").size());
    return row;
  }
  ConditionReport<double> rep;
  rep.gamma0 = j.at("gamma0").get<double>();
  rep.gamma1 = j.at("gamma1").get<double>();
  rep.lhs = j.at("lhs").get<double>();
  rep.rhs = j.at("rhs").get<double>();
  rep.holds = j.at("holds").get<bool>();
  rep.drift_bound = real_from_json(j.at("drift_bound"));
  row.report = rep;
  return row;
}

json to_json(const RenewalSummary& s) {
  return {{"runs", s.runs},
          {"censored", s.censored},
          {"median_attempts", s.median_attempts},
          {"mean_attempts", s.mean_attempts},
          {"mean_total_time", s.mean_total_time},
          {"attempts", s.attempts},
          {"total_time", s.total_time}};
}

json to_json(const RefinedRow& row) {
  return {{"eps", row.eps},
          {"mean_s1", row.mean_s1},
          {"mean_00", row.mean_00},
          {"drift_bound", row.drift_bound},
          {"empirical_drift", row.empirical_drift},
          {"stderr", row.std_error}};
}

static constexpr std::string_view kSweepHeader = "code,eps,gamma0,gamma1,lhs,rhs,holds,drift_bound";
static constexpr std::string_view kVolumeHeader = "samples,hits,fraction,ci_low,ci_high,seed";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    out << (row.code ? row.code->str() : format_quad(row.params)) << ',' << (row.eps ? format_real(*row.eps) : "")
        << ',';
    if (row.report) {
      const auto& r = *row.report;
      out << format_real(r.gamma0) << ',' << format_real(r.gamma1) << ',' << format_real(r.lhs) << ','
          << format_real(r.rhs) << ',' << (r.holds ? "true" : "false") << ',' << format_real(r.drift_bound);
    } else {
      out << "degenerate:" << row.error << ",,,,,";
    }
    out << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split(line, ",") != split(kSweepHeader, ",")) {
    throw InvalidInput("sweep CSV must start with header " + std::string(kSweepHeader));
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ",");
    if (f.size() != 8) throw InvalidInput("sweep CSV row needs 8 fields: " + line);
    SweepRow row;
    if (!f[1].empty()) row.eps = parse_real(f[1]);
    fill_params(row, f[0]);
    if (f[2].rfind("degenerate:", 0) == 0) {
      row.error = f[2].substr(std::string("degenerate:").size());
    } else {
      ConditionReport<double> rep;
      rep.gamma0 = parse_real(f[2]);
      rep.gamma1 = parse_real(f[3]);
      rep.lhs = parse_real(f[4]);
      rep.rhs = parse_real(f[5]);
      if (f[6] != "true" && f[6] != "false") throw InvalidInput("holds must be true or false: " + f[6]);
      rep.holds = f[6] == "true";
      rep.drift_bound = parse_real(f[7]);
      row.report = rep;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_volume_csv(std::ostream& out, const VolumeEstimate& v) {
  out << kVolumeHeader << '\n'
      << v.samples << ',' << v.hits << ',' << format_real(v.fraction) << ',' << format_real(v.ci95_low) << ','
      << format_real(v.ci95_high) << ',' << v.seed << '\n';
}

VolumeEstimate read_volume_csv(std::istream& in) {
  std::string header, line;
  if (!std::getline(in, header) || split(header, ",") != split(kVolumeHeader, ",")) {
    throw InvalidInput("volume CSV must start with header " + std::string(kVolumeHeader));
  }
  if (!std::getline(in, line)) throw InvalidInput("volume CSV has no data row");
  const auto f = split(line, ",");
  if (f.size() != 6) throw InvalidInput("volume CSV row needs 6 fields: " + line);
  VolumeEstimate v;
  v.samples = parse_count(f[0]);
  v.hits = parse_count(f[1]);
  v.fraction = parse_real(f[2]);
  v.ci95_low = parse_real(f[3]);
  v.ci95_high = parse_real(f[4]);
  v.seed = parse_count(f[5]);
  return v;
}

void write_refined_csv(std::ostream& out, const std::vector<RefinedRow>& rows) {
  out << "eps,mean_s1,mean_00,drift_bound,empirical_drift,stderr\n";
  for (const auto& r : rows) {
    out << format_real(r.eps) << ',' << format_real(r.mean_s1) << ',' << format_real(r.mean_00) << ','
        << format_real(r.drift_bound) << ',' << format_real(r.empirical_drift) << ',' << format_real(r.std_error)
        << '\n';
  }
}

void write_density_csv(std::ostream& out, const std::vector<DensityPoint>& series) {
  out << "step,q_density_num,q_density_den\n";
  for (const auto& p : series) out << p.step << ',' << p.unknown << ',' << p.ring_size << '\n';
}

}  // namespace pcaerg::io
