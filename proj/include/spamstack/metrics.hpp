#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spamstack/corpus.hpp"

namespace spamstack {

// ll = legitimate kept, ls = legitimate blocked, sl = spam passed,
// ss = spam blocked.
struct ConfusionCounts {
  long ll = 0;
  long ls = 0;
  long sl = 0;
  long ss = 0;

  long n_legit() const { return ll + ls; }
  long n_spam() const { return ss + sl; }
  long total() const { return n_legit() + n_spam(); }
  ConfusionCounts& operator+=(const ConfusionCounts& o);
};

ConfusionCounts count_confusion(std::span<const Category> verdicts,
                                std::span<const Category> truths);

// (lambda*ll + ss) / (lambda*(ll+ls) + ss + sl).
// Throws std::invalid_argument on empty counts or lambda <= 0.
double weighted_accuracy(const ConfusionCounts& c, double lambda);

// No-filter policy: lambda*n_l / (lambda*n_l + n_s).
double baseline_wacc(long n_l, long n_s, double lambda);

// (ss + sl) / (lambda*ls + sl). A filter with no weighted errors has a zero
// denominator; returns +infinity rather than failing.
double tcr(const ConfusionCounts& c, double lambda);

struct RecallPrecision {
  std::optional<double> sr;  // ss/(ss+sl), absent when no spam present
  std::optional<double> sp;  // ss/(ss+ls), absent when nothing was blocked
};
RecallPrecision spam_recall_precision(const ConfusionCounts& c);

struct MetricsReport {
  double lambda = 1.0;
  double wacc = 0.0;
  double werr = 0.0;
  double baseline_wacc = 0.0;
  double baseline_werr = 0.0;
  double tcr = 0.0;  // +infinity when the filter makes no weighted errors
  std::optional<double> sr;
  std::optional<double> sp;
  ConfusionCounts counts;  // element-wise sum over folds
};

MetricsReport metrics_report(const ConfusionCounts& c, double lambda, long baseline_n_l,
                             long baseline_n_s);

// WAcc is the unweighted mean over folds; TCR is baseline WErr over mean
// WErr, not the mean of per-fold TCRs. SR/SP come from the summed counts
// unless macro_sr_sp, which averages defined per-fold values instead.
MetricsReport aggregate_folds(std::span<const ConfusionCounts> per_fold, double lambda,
                              long baseline_n_l, long baseline_n_s, bool macro_sr_sp = false);

struct OverlapRow {
  double only_one_pct = 0.0;  // exactly one classifier errs
  double both_pct = 0.0;      // both err
};
struct OverlapTable {
  OverlapRow legitimate;  // percentages of the legitimate messages
  OverlapRow spam;        // percentages of the spam messages
  OverlapRow all;         // percentages of all messages
};
OverlapTable error_overlap(std::span<const Category> a_verdicts,
                           std::span<const Category> b_verdicts,
                           std::span<const Category> truths);

// ---- report emission ----

// Fixed leading CSV columns; runners append configuration columns.
inline constexpr const char* kCsvFixedHeader = "scenario_lambda,variant,k,m,sr,sp,wacc,tcr";

// Full-precision doubles (%.17g); infinities render as "inf".
std::string csv_value(double v);
std::string csv_value(std::optional<double> v);  // absent -> empty cell
std::string csv_value(std::optional<int> v);

// The "sr,sp,wacc,tcr" cells of a report.
std::string csv_metrics_cells(const MetricsReport& r);

struct ResultRow {
  std::string scenario;  // e.g. "lambda=1"
  std::optional<int> k;
  int m = 0;
  MetricsReport report;
};

// Markdown table at display precision: SR/SP one-decimal percent, TCR two
// decimals.
std::string markdown_results_table(std::string_view caption, std::span<const ResultRow> rows);
std::string markdown_overlap_table(double lambda, const OverlapTable& t);

}  // namespace spamstack
