// Scaling reports: measured rows, log-log slope fits and verdicts.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace whitham::harness {

inline constexpr const char* kCsvHeader = "experiment,id,mu,eps,t,metric,value";

struct Row {
  std::string experiment;
  std::string id;  // provenance tuple
  double mu = 0;
  double eps = 0;
  double t = 0;
  std::string metric;
  double value = 0;
};

// Least-squares fit of log(value) against log(mu), log(eps) or both.  A
// slope is NaN when its axis was not fitted; `note` says why.
struct SlopeFit {
  double slope_mu;
  double half_width_mu;
  double slope_eps;
  double half_width_eps;
  double slope_total;  // along mu = eps when both move together
  double half_width_total;
  double slope_t;
  double half_width_t;
  double intercept;
  int points = 0;
  std::string note;

  SlopeFit();
  bool has_mu() const;
  bool has_eps() const;
  bool has_total() const;
};

struct Verdict {
  bool pass = false;
  std::string detail;  // witness inputs on failure, measured values otherwise
  double seconds = 0;  // wall time of the producing check; never serialized
};

struct ScalingReport {
  std::string experiment;
  std::map<std::string, std::string> provenance;
  std::vector<Row> rows;
  std::map<std::string, SlopeFit> fitted_slopes;
  std::map<std::string, Verdict> verdicts;

  std::vector<const Row*> select(const std::string& metric) const;
  bool all_pass() const;
};

// Two-sided 95% Student-t quantile.
double t_quantile_975(int dof);

struct Sample2 {
  double mu;
  double eps;
  double value;
};

// Fits value ~ C mu^a eps^b.  Axes that do not span an octave with at least
// three distinct values are not fitted; when mu and eps are collinear the
// single exponent goes to slope_total.
SlopeFit fit_power_law(const std::vector<Sample2>& samples);

// Fits value ~ C t^c over t > 0.
SlopeFit fit_time_power(const std::vector<double>& t, const std::vector<double>& value);

struct LinearFit {
  double a;  // intercept
  double b;  // slope
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fixed 17-significant-digit formatting so output is reproducible.
std::string format_number(double v);

void write_csv(const ScalingReport& r, std::ostream& out);
void write_json(const ScalingReport& r, std::ostream& out);
std::string to_csv(const ScalingReport& r);
std::string to_json(const ScalingReport& r);

// Reads rows back from CSV written by write_csv.
std::vector<Row> read_csv(std::istream& in);
// Reads a JSON report written by write_json.
ScalingReport read_json(std::istream& in);

// Refits every metric that has rows at several (mu, eps) points; used by the
// `report` command on previously written rows.
void refit_all(ScalingReport& r);

// Human-readable verdict summary.
void print_summary(const ScalingReport& r, std::ostream& out);

}  // namespace whitham::harness
