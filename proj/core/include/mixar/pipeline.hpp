#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mixar/strategy.hpp"

namespace mixar {

enum class Transform { None, HpCycle, LogReturns };

std::string to_string(Transform t);
/// Accepts none, hp, hp_cycle, logret, log_returns.
Transform transform_from_string(const std::string& name);

struct SeriesFrame {
  std::string name;
  std::vector<std::string> timestamps;  // ISO-8601 date or YYYY-MM, strictly increasing
  std::vector<double> values;
  Transform transform_applied = Transform::None;

  std::size_t size() const { return values.size(); }
};

/// Reads a headered CSV whose first column holds dates, or an integer index
/// when that column is named "t". Empty, NA and NaN cells are rejected with
/// the file line in the message.
SeriesFrame load_csv(const std::string& path, const std::string& column);

/// Every column after the date column, in file order.
std::vector<SeriesFrame> load_csv_all(const std::string& path);

/// Same parsers on CSV text; `source` only labels error messages.
SeriesFrame parse_csv(const std::string& text, const std::string& column,
                      const std::string& source = "<input>");
std::vector<SeriesFrame> parse_csv_all(const std::string& text, const std::string& source = "<input>");

/// log(y_t) - log(y_{t-1}); drops the first timestamp. Not centered.
SeriesFrame log_returns(const SeriesFrame& frame);

/// Hodrick-Prescott trend: argmin sum (y - tau)^2 + lambda sum (second difference of tau)^2.
std::vector<double> hp_trend(std::span<const double> y, double lambda = 129600.0);

struct HpDecomposition {
  SeriesFrame trend;
  SeriesFrame cycle;
};

HpDecomposition hp_filter(const SeriesFrame& frame, double lambda = 129600.0);

/// Applies one transform (HpCycle returns the cycle).
SeriesFrame apply_transform(const SeriesFrame& frame, Transform t, double lambda = 129600.0);

struct OrderSelection {
  std::size_t p = 1;
  std::vector<double> aic;  // k = 1..pmax
  std::vector<double> bic;
  std::size_t p_aic = 1;
};

/// Least-squares AR(k,0) fits on the common sample t = pmax..T-1 of the
/// centered series; p is the BIC argmin.
OrderSelection select_order(std::span<const double> y, std::size_t pmax);

struct LjungBox {
  std::vector<double> q;        // h = 1..lags
  std::vector<double> p_value;
};

LjungBox ljung_box(std::span<const double> e, std::size_t lags);

struct Descriptive {
  double mean = 0.0;
  double sd = 0.0;        // n - 1 denominator
  double skewness = 0.0;  // m3 / m2^1.5
  double kurtosis = 0.0;  // m4 / m2^2, not excess
};

Descriptive descriptive_stats(std::span<const double> y);

/// AR(p,0) least-squares residuals of the centered series.
std::vector<double> ar_residuals(std::span<const double> y, std::size_t p);

struct SeriesAnalysis {
  std::string name;
  Transform transform = Transform::None;
  std::size_t T = 0;
  Descriptive stats;
  OrderSelection order;
  LjungBox residual_test;  // residuals of the least-squares AR(p)
  IdentificationReport report;
};

/// Descriptive statistics, order selection, Ljung-Box on the AR(p)
/// residuals and the candidate estimation for one transformed series.
SeriesAnalysis analyze_series(const SeriesFrame& frame, std::size_t pmax,
                              const StrategyOptions& options = {}, std::size_t lb_lags = 2);

}  // namespace mixar
