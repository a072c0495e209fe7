#include "mixar/pipeline.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "mixar/error.hpp"

namespace mixar {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Sort key for YYYY-MM-DD or YYYY-MM; throws on anything else.
long date_key(const std::string& s, std::size_t line, const std::string& source) {
  auto fail = [&] {
    return Error(ErrorKind::Data, source + ":" + std::to_string(line) + ": unrecognized date '" + s + "'");
  };
  auto digits = [&](std::size_t pos, std::size_t n) {
    int v = 0;
    for (std::size_t i = pos; i < pos + n; ++i) {
      if (i >= s.size() || s[i] < '0' || s[i] > '9') throw fail();
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  if (s.size() != 7 && s.size() != 10) throw fail();
  if (s[4] != '-') throw fail();
  const int y = digits(0, 4);
  const int m = digits(5, 2);
  int d = 1;
  if (s.size() == 10) {
    if (s[7] != '-') throw fail();
    d = digits(8, 2);
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw fail();
  return static_cast<long>(y) * 10000 + m * 100 + d;
}

// Integer observation index, used when the first header cell is "t".
long index_key(const std::string& s, std::size_t line, const std::string& source) {
  if (s.empty() || s.size() > 12 || s.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::Data, source + ":" + std::to_string(line) + ": unrecognized index '" + s + "'");
  }
  return std::stol(s);
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" ||
         cell == "." || cell == "null";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SeriesFrame> parse_columns(const std::string& text, const std::string& source,
                                       const std::string* only) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split(line);
      break;
    }
  }
  if (header.size() < 2) throw Error(ErrorKind::Data, source + ": need a date column and a value column");

  std::vector<std::size_t> cols;
  for (std::size_t c = 1; c < header.size(); ++c)
    if (only == nullptr || header[c] == *only) cols.push_back(c);
  if (cols.empty()) throw Error(ErrorKind::Data, source + ": no column named '" + *only + "'");

  std::vector<SeriesFrame> frames(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) frames[k].name = header[cols[k]];
  const bool indexed = trim(header[0]) == "t";
  std::vector<std::string> dates;
  long last_key = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::Data, where + ": expected " + std::to_string(header.size()) + " fields");
    }
    const long key = indexed ? index_key(cells[0], line_no, source) : date_key(cells[0], line_no, source);
    if (key <= last_key) throw Error(ErrorKind::Data, where + ": dates are not strictly increasing");
    last_key = key;
    dates.push_back(cells[0]);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const auto& cell = cells[cols[k]];
      if (is_missing(cell)) {
        throw Error(ErrorKind::Data, where + ": missing value in column '" + frames[k].name + "'");
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::Data, where + ": cannot parse '" + cell + "' in column '" + frames[k].name + "'");
      }
      frames[k].values.push_back(v);
    }
  }
  if (dates.size() < 2) throw Error(ErrorKind::Data, source + ": fewer than 2 data rows");
  for (auto& f : frames) f.timestamps = dates;
  return frames;
}

void require_length(std::size_t n, std::size_t need, const char* what) {
  if (n < need) throw Error(ErrorKind::Length, std::string(what) + " needs at least " + std::to_string(need) + " values");
}

}  // namespace

std::string to_string(Transform t) {
  switch (t) {
    case Transform::None: return "none";
    case Transform::HpCycle: return "hp_cycle";
    case Transform::LogReturns: return "log_returns";
  }
  return "none";
}

Transform transform_from_string(const std::string& name) {
  if (name == "none") return Transform::None;
  if (name == "hp" || name == "hp_cycle") return Transform::HpCycle;
  if (name == "logret" || name == "log_returns") return Transform::LogReturns;
  throw Error(ErrorKind::Usage, "unknown transform: " + name);
}

SeriesFrame parse_csv(const std::string& text, const std::string& column, const std::string& source) {
  return parse_columns(text, source, &column).front();
}

std::vector<SeriesFrame> parse_csv_all(const std::string& text, const std::string& source) {
  return parse_columns(text, source, nullptr);
}

SeriesFrame load_csv(const std::string& path, const std::string& column) {
  return parse_csv(read_file(path), column, path);
}

std::vector<SeriesFrame> load_csv_all(const std::string& path) {
  return parse_csv_all(read_file(path), path);
}

SeriesFrame log_returns(const SeriesFrame& frame) {
  require_length(frame.size(), 2, "log returns");
  SeriesFrame out;
  out.name = frame.name;
  out.transform_applied = Transform::LogReturns;
  for (double v : frame.values)
    if (!(v > 0.0)) throw Error(ErrorKind::Domain, "log returns need positive values");
  for (std::size_t t = 1; t < frame.size(); ++t) {
    out.values.push_back(std::log(frame.values[t]) - std::log(frame.values[t - 1]));
    if (t < frame.timestamps.size()) out.timestamps.push_back(frame.timestamps[t]);
  }
  return out;
}

std::vector<double> hp_trend(std::span<const double> y, double lambda) {
  const auto n = static_cast<Eigen::Index>(y.size());
  require_length(y.size(), 4, "HP filter");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::Parameter, "lambda must be non-negative");

  // I + lambda D'D with D the (n-2) x n second-difference operator.
  std::vector<Eigen::Triplet<double>> trips;
  const double w[3] = {1.0, -2.0, 1.0};
  for (Eigen::Index r = 0; r + 2 < n; ++r)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) trips.emplace_back(r + a, r + b, lambda * w[a] * w[b]);
  for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(i, i, 1.0);
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Degenerate, "HP system is singular");
  const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), n);
  Eigen::VectorXd tau = solver.solve(rhs);
  // One step of iterative refinement keeps trend + cycle = y tight for large lambda.
  tau += solver.solve(rhs - A * tau);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Degenerate, "HP solve failed");
  return {tau.data(), tau.data() + n};
}

HpDecomposition hp_filter(const SeriesFrame& frame, double lambda) {
  HpDecomposition out;
  out.trend.name = frame.name + "_trend";
  out.cycle.name = frame.name;
  out.trend.timestamps = out.cycle.timestamps = frame.timestamps;
  out.trend.values = hp_trend(frame.values, lambda);
  out.cycle.values.resize(frame.size());
  for (std::size_t t = 0; t < frame.size(); ++t) out.cycle.values[t] = frame.values[t] - out.trend.values[t];
  out.trend.transform_applied = Transform::None;
  out.cycle.transform_applied = Transform::HpCycle;
  return out;
}

SeriesFrame apply_transform(const SeriesFrame& frame, Transform t, double lambda) {
  switch (t) {
    case Transform::None: return frame;
    case Transform::HpCycle: return hp_filter(frame, lambda).cycle;
    case Transform::LogReturns: return log_returns(frame);
  }
  return frame;
}

OrderSelection select_order(std::span<const double> y, std::size_t pmax) {
  if (pmax < 1) throw Error(ErrorKind::Order, "pmax must be at least 1");
  const auto c = center(y);
  const std::size_t T = c.size();
  if (T < pmax + 10) throw Error(ErrorKind::Length, "series too short for order selection");
  const std::size_t n = T - pmax;
  Eigen::VectorXd target(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(pmax));
  for (std::size_t t = pmax; t < T; ++t) {
    target(static_cast<Eigen::Index>(t - pmax)) = c[t];
    for (std::size_t k = 1; k <= pmax; ++k) X(static_cast<Eigen::Index>(t - pmax), static_cast<Eigen::Index>(k - 1)) = c[t - k];
  }
  OrderSelection out;
  const double nn = static_cast<double>(n);
  double best_bic = std::numeric_limits<double>::infinity();
  double best_aic = best_bic;
  for (std::size_t k = 1; k <= pmax; ++k) {
    const auto Xk = X.leftCols(static_cast<Eigen::Index>(k));
    const Eigen::VectorXd beta = Xk.colPivHouseholderQr().solve(target);
    const double sigma2 = (target - Xk * beta).squaredNorm() / nn;
    if (!(sigma2 > 0.0)) throw Error(ErrorKind::Degenerate, "perfect AR fit");
    const double ll = nn * std::log(sigma2);
    const double aic = ll + 2.0 * static_cast<double>(k);
    const double bic = ll + std::log(nn) * static_cast<double>(k);
    out.aic.push_back(aic);
    out.bic.push_back(bic);
    if (bic < best_bic) {
      best_bic = bic;
      out.p = k;
    }
    if (aic < best_aic) {
      best_aic = aic;
      out.p_aic = k;
    }
  }
  return out;
}

LjungBox ljung_box(std::span<const double> e, std::size_t lags) {
  const std::size_t T = e.size();
  if (lags == 0) throw Error(ErrorKind::Parameter, "lags must be positive");
  if (lags >= T || T <= lags + 5) throw Error(ErrorKind::Length, "too few observations for the lag count");
  const auto c = center(e);
  double denom = 0.0;
  for (double v : c) denom += v * v;
  if (!(denom > 0.0)) throw Error(ErrorKind::Degenerate, "zero variance residuals");
  LjungBox out;
  const double n = static_cast<double>(T);
  double q = 0.0;
  for (std::size_t k = 1; k <= lags; ++k) {
    double num = 0.0;
    for (std::size_t t = k; t < T; ++t) num += c[t] * c[t - k];
    const double rho = num / denom;
    q += rho * rho / (n - static_cast<double>(k));
    const double Q = n * (n + 2.0) * q;
    out.q.push_back(Q);
    out.p_value.push_back(boost::math::gamma_q(0.5 * static_cast<double>(k), 0.5 * Q));
  }
  return out;
}

Descriptive descriptive_stats(std::span<const double> y) {
  require_length(y.size(), 4, "descriptive statistics");
  const double n = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : y) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  if (!(m2 > 0.0)) throw Error(ErrorKind::Degenerate, "zero variance series");
  Descriptive out;
  out.mean = mean;
  out.sd = std::sqrt(m2 / (n - 1.0));
  m2 /= n;
  m3 /= n;
  m4 /= n;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.kurtosis = m4 / (m2 * m2);
  return out;
}

std::vector<double> ar_residuals(std::span<const double> y, std::size_t p) {
  const auto c = center(y);
  const std::size_t T = c.size();
  if (T <= p + 1) throw Error(ErrorKind::Length, "series shorter than the AR order");
  Eigen::VectorXd target(static_cast<Eigen::Index>(T - p));
  Eigen::MatrixXd X(static_cast<Eigen::Index>(T - p), static_cast<Eigen::Index>(p));
  for (std::size_t t = p; t < T; ++t) {
    target(static_cast<Eigen::Index>(t - p)) = c[t];
    for (std::size_t k = 1; k <= p; ++k) X(static_cast<Eigen::Index>(t - p), static_cast<Eigen::Index>(k - 1)) = c[t - k];
  }
  const Eigen::VectorXd res = target - X * X.colPivHouseholderQr().solve(target);
  return {res.data(), res.data() + res.size()};
}

SeriesAnalysis analyze_series(const SeriesFrame& frame, std::size_t pmax, const StrategyOptions& options,
                              std::size_t lb_lags) {
  require_length(frame.size(), 50, "estimation");
  SeriesAnalysis out;
  out.name = frame.name;
  out.transform = frame.transform_applied;
  out.T = frame.size();
  out.stats = descriptive_stats(frame.values);
  out.order = select_order(frame.values, pmax);
  out.residual_test = ljung_box(ar_residuals(frame.values, out.order.p), lb_lags);
  out.report = estimate_candidates(frame.values, out.order.p, options);
  return out;
}

}  // namespace mixar
