#include "whitham/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>
#include <json.hpp>

#include "whitham/error.hpp"

namespace whitham::harness {

namespace {
using Eigen::Index;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

SlopeFit::SlopeFit()
    : slope_mu(kNaN),
      half_width_mu(kNaN),
      slope_eps(kNaN),
      half_width_eps(kNaN),
      slope_total(kNaN),
      half_width_total(kNaN),
      slope_t(kNaN),
      half_width_t(kNaN),
      intercept(kNaN) {}

bool SlopeFit::has_mu() const { return std::isfinite(slope_mu); }
bool SlopeFit::has_eps() const { return std::isfinite(slope_eps); }
bool SlopeFit::has_total() const { return std::isfinite(slope_total); }

std::vector<const Row*> ScalingReport::select(const std::string& metric) const {
  std::vector<const Row*> out;
  for (const Row& r : rows) {
    if (r.metric == metric) out.push_back(&r);
  }
  return out;
}

bool ScalingReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second.pass; });
}

double t_quantile_975(int dof) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) return kNaN;
  if (dof <= 30) return table[dof - 1];
  // Large-dof expansion around the normal quantile.
  const double z = 1.959963984540054;
  const double n = dof;
  return z + (z * z * z + z) / (4 * n) + (5 * std::pow(z, 5) + 16 * z * z * z + 3 * z) / (96 * n * n);
}

namespace {

struct Regression {
  Eigen::VectorXd beta;
  Eigen::VectorXd half_width;  // NaN when dof = 0
};

Regression least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  Regression r;
  const auto qr = x.colPivHouseholderQr();
  r.beta = qr.solve(y);
  const Index n = x.rows(), p = x.cols();
  r.half_width = Eigen::VectorXd::Constant(p, kNaN);
  if (n > p) {
    const Eigen::VectorXd res = y - x * r.beta;
    const double s2 = res.squaredNorm() / double(n - p);
    const Eigen::MatrixXd cov = s2 * (x.transpose() * x).inverse();
    const double tq = t_quantile_975(int(n - p));
    for (Index k = 0; k < p; ++k) r.half_width[k] = tq * std::sqrt(std::max(cov(k, k), 0.0));
  }
  return r;
}

struct AxisInfo {
  int distinct = 0;
  double range = 0;  // max/min
};

AxisInfo axis_info(const std::vector<double>& v) {
  std::set<double> s(v.begin(), v.end());
  AxisInfo a;
  a.distinct = int(s.size());
  if (!s.empty() && *s.begin() > 0) a.range = *s.rbegin() / *s.begin();
  return a;
}

bool usable(const AxisInfo& a) { return a.distinct >= 3 && a.range >= 2.0; }

std::string why_not(const char* axis, const AxisInfo& a) {
  std::ostringstream os;
  os << axis << " not fitted: ";
  if (a.distinct < 3) os << a.distinct << " distinct value(s), need 3";
  else os << "range x" << a.range << " is below one octave";
  return os.str();
}

}  // namespace

SlopeFit fit_power_law(const std::vector<Sample2>& samples) {
  SlopeFit fit;
  std::vector<Sample2> s;
  for (const auto& x : samples) {
    if (x.mu > 0 && x.eps > 0 && x.value > 0 && std::isfinite(x.value)) s.push_back(x);
  }
  fit.points = int(s.size());
  std::vector<double> mus, epss;
  bool collinear = true;
  for (const auto& x : s) {
    mus.push_back(x.mu);
    epss.push_back(x.eps);
    if (std::abs(x.mu - x.eps) > 1e-12 * x.eps) collinear = false;
  }
  const AxisInfo am = axis_info(mus), ae = axis_info(epss);
  std::vector<std::string> notes;

  if (collinear) {
    if (!usable(ae)) {
      fit.note = why_not("mu=eps", ae);
      return fit;
    }
    Eigen::MatrixXd x(s.size(), 2);
    Eigen::VectorXd y(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      x(i, 0) = 1;
      x(i, 1) = std::log(s[i].eps);
      y[i] = std::log(s[i].value);
    }
    const Regression r = least_squares(x, y);
    fit.intercept = r.beta[0];
    fit.slope_total = r.beta[1];
    fit.half_width_total = r.half_width[1];
    return fit;
  }

  const bool use_mu = usable(am), use_eps = usable(ae);
  if (!use_mu) notes.push_back(why_not("mu", am));
  if (!use_eps) notes.push_back(why_not("eps", ae));
  const int p = 1 + int(use_mu) + int(use_eps);
  if (p > 1) {
    Eigen::MatrixXd x(s.size(), p);
    Eigen::VectorXd y(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      int c = 0;
      x(i, c++) = 1;
      if (use_mu) x(i, c++) = std::log(s[i].mu);
      if (use_eps) x(i, c++) = std::log(s[i].eps);
      y[i] = std::log(s[i].value);
    }
    const Regression r = least_squares(x, y);
    fit.intercept = r.beta[0];
    int c = 1;
    if (use_mu) {
      fit.slope_mu = r.beta[c];
      fit.half_width_mu = r.half_width[c];
      ++c;
    }
    if (use_eps) {
      fit.slope_eps = r.beta[c];
      fit.half_width_eps = r.half_width[c];
    }
  }
  for (std::size_t i = 0; i < notes.size(); ++i) fit.note += (i ? "; " : "") + notes[i];
  return fit;
}

SlopeFit fit_time_power(const std::vector<double>& t, const std::vector<double>& value) {
  SlopeFit fit;
  std::vector<double> tt, vv;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0 && value[i] > 0 && std::isfinite(value[i])) {
      tt.push_back(t[i]);
      vv.push_back(value[i]);
    }
  }
  fit.points = int(tt.size());
  const AxisInfo a = axis_info(tt);
  if (!usable(a)) {
    fit.note = why_not("t", a);
    return fit;
  }
  Eigen::MatrixXd x(tt.size(), 2);
  Eigen::VectorXd y(tt.size());
  for (std::size_t i = 0; i < tt.size(); ++i) {
    x(i, 0) = 1;
    x(i, 1) = std::log(tt[i]);
    y[i] = std::log(vv[i]);
  }
  const Regression r = least_squares(x, y);
  fit.intercept = r.beta[0];
  fit.slope_t = r.beta[1];
  fit.half_width_t = r.half_width[1];
  return fit;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fit_line needs at least two points");
  }
  Eigen::MatrixXd a(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(i, 0) = 1;
    a(i, 1) = x[i];
    b[i] = y[i];
  }
  const Eigen::VectorXd beta = a.colPivHouseholderQr().solve(b);
  return {beta[0], beta[1]};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const ScalingReport& r, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const Row& row : r.rows) {
    out << row.experiment << ',' << row.id << ',' << format_number(row.mu) << ','
        << format_number(row.eps) << ',' << format_number(row.t) << ',' << row.metric << ','
        << format_number(row.value) << '\n';
  }
}

std::string to_csv(const ScalingReport& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

namespace {

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double from_json_num(const nlohmann::json& j) {
  return j.is_null() ? kNaN : j.get<double>();
}

}  // namespace

void write_json(const ScalingReport& r, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["experiment"] = r.experiment;
  j["provenance"] = r.provenance;
  ordered_json rows = ordered_json::array();
  for (const Row& row : r.rows) {
    rows.push_back({{"experiment", row.experiment},
                    {"id", row.id},
                    {"mu", num(row.mu)},
                    {"eps", num(row.eps)},
                    {"t", num(row.t)},
                    {"metric", row.metric},
                    {"value", num(row.value)}});
  }
  j["rows"] = rows;
  ordered_json fits = ordered_json::object();
  for (const auto& [name, f] : r.fitted_slopes) {
    fits[name] = {{"slope_mu", num(f.slope_mu)},
                  {"half_width_mu", num(f.half_width_mu)},
                  {"slope_eps", num(f.slope_eps)},
                  {"half_width_eps", num(f.half_width_eps)},
                  {"slope_total", num(f.slope_total)},
                  {"half_width_total", num(f.half_width_total)},
                  {"slope_t", num(f.slope_t)},
                  {"half_width_t", num(f.half_width_t)},
                  {"intercept", num(f.intercept)},
                  {"points", f.points},
                  {"note", f.note}};
  }
  j["fitted_slopes"] = fits;
  ordered_json verdicts = ordered_json::object();
  for (const auto& [name, v] : r.verdicts) verdicts[name] = {{"pass", v.pass}, {"detail", v.detail}};
  j["verdicts"] = verdicts;
  out << j.dump(2) << '\n';
}

std::string to_json(const ScalingReport& r) {
  std::ostringstream os;
  write_json(r, os);
  return os.str();
}

std::vector<Row> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::InvalidConfig, "CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 7) {
      throw Error(ErrorCode::InvalidConfig, "CSV line " + std::to_string(lineno) + " has " +
                                                std::to_string(f.size()) + " fields");
    }
    try {
      rows.push_back({f[0], f[1], std::stod(f[2]), std::stod(f[3]), std::stod(f[4]), f[5],
                      std::stod(f[6])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "CSV line " + std::to_string(lineno) + " is malformed");
    }
  }
  return rows;
}

ScalingReport read_json(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("report is not valid JSON: ") + e.what());
  }
  ScalingReport r;
  r.experiment = j.value("experiment", "");
  if (j.contains("provenance")) r.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  for (const auto& row : j.value("rows", nlohmann::json::array())) {
    r.rows.push_back({row.at("experiment").get<std::string>(), row.at("id").get<std::string>(),
                      from_json_num(row.at("mu")), from_json_num(row.at("eps")),
                      from_json_num(row.at("t")), row.at("metric").get<std::string>(),
                      from_json_num(row.at("value"))});
  }
  const nlohmann::json fits = j.value("fitted_slopes", nlohmann::json::object());
  for (const auto& [name, f] : fits.items()) {
    SlopeFit s;
    s.slope_mu = from_json_num(f.at("slope_mu"));
    s.half_width_mu = from_json_num(f.at("half_width_mu"));
    s.slope_eps = from_json_num(f.at("slope_eps"));
    s.half_width_eps = from_json_num(f.at("half_width_eps"));
    s.slope_total = from_json_num(f.at("slope_total"));
    s.half_width_total = from_json_num(f.at("half_width_total"));
    s.slope_t = from_json_num(f.at("slope_t"));
    s.half_width_t = from_json_num(f.at("half_width_t"));
    s.intercept = from_json_num(f.at("intercept"));
    s.points = f.at("points").get<int>();
    s.note = f.at("note").get<std::string>();
    r.fitted_slopes[name] = s;
  }
  // items() on a temporary would dangle.
  const nlohmann::json verdicts = j.value("verdicts", nlohmann::json::object());
  for (const auto& [name, v] : verdicts.items()) {
    r.verdicts[name] = {v.at("pass").get<bool>(), v.at("detail").get<std::string>()};
  }
  return r;
}

void refit_all(ScalingReport& r) {
  std::map<std::string, std::vector<Sample2>> by_metric;
  std::map<std::string, double> last_t;
  // Only the last time of each (metric, mu, eps) enters the parameter fit.
  std::map<std::tuple<std::string, double, double>, const Row*> latest;
  for (const Row& row : r.rows) {
    auto key = std::make_tuple(row.metric, row.mu, row.eps);
    auto it = latest.find(key);
    if (it == latest.end() || row.t >= it->second->t) latest[key] = &row;
  }
  for (const auto& [key, row] : latest) {
    by_metric[row->metric].push_back({row->mu, row->eps, row->value});
  }
  for (const auto& [metric, samples] : by_metric) {
    if (samples.size() < 3) continue;
    SlopeFit f = fit_power_law(samples);
    if (f.has_mu() || f.has_eps() || f.has_total()) r.fitted_slopes[metric] = f;
  }
}

void print_summary(const ScalingReport& r, std::ostream& out) {
  out << r.experiment << ": " << r.rows.size() << " rows\n";
  for (const auto& [name, f] : r.fitted_slopes) {
    out << "  fit " << name << ":";
    if (f.has_mu()) out << " slope_mu=" << f.slope_mu << " +- " << f.half_width_mu;
    if (f.has_eps()) out << " slope_eps=" << f.slope_eps << " +- " << f.half_width_eps;
    if (f.has_total()) out << " slope_total=" << f.slope_total << " +- " << f.half_width_total;
    if (std::isfinite(f.slope_t)) out << " slope_t=" << f.slope_t << " +- " << f.half_width_t;
    if (!f.note.empty()) out << " (" << f.note << ")";
    out << '\n';
  }
  for (const auto& [name, v] : r.verdicts) {
    out << "  " << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << '\n';
  }
}

}  // namespace whitham::harness
