#include "spamstack/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spamstack {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  ll += o.ll;
  ls += o.ls;
  sl += o.sl;
  ss += o.ss;
  return *this;
}

ConfusionCounts count_confusion(std::span<const Category> verdicts,
                                std::span<const Category> truths) {
  if (verdicts.size() != truths.size()) {
    throw std::invalid_argument("verdicts and truths are not aligned");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool is_spam = truths[i] == Category::spam;
    const bool said_spam = verdicts[i] == Category::spam;
    if (is_spam) {
      (said_spam ? c.ss : c.sl)++;
    } else {
      (said_spam ? c.ls : c.ll)++;
    }
  }
  return c;
}

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

}  // namespace

double weighted_accuracy(const ConfusionCounts& c, double lambda) {
  check_lambda(lambda);
  if (c.total() == 0) throw std::invalid_argument("empty confusion counts");
  return (lambda * static_cast<double>(c.ll) + static_cast<double>(c.ss)) /
         (lambda * static_cast<double>(c.n_legit()) + static_cast<double>(c.n_spam()));
}

double baseline_wacc(long n_l, long n_s, double lambda) {
  check_lambda(lambda);
  if (n_l + n_s == 0) throw std::invalid_argument("empty corpus");
  return lambda * static_cast<double>(n_l) /
         (lambda * static_cast<double>(n_l) + static_cast<double>(n_s));
}

double tcr(const ConfusionCounts& c, double lambda) {
  check_lambda(lambda);
  const double denom = lambda * static_cast<double>(c.ls) + static_cast<double>(c.sl);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(c.n_spam()) / denom;
}

RecallPrecision spam_recall_precision(const ConfusionCounts& c) {
  RecallPrecision rp;
  if (c.ss + c.sl > 0) rp.sr = static_cast<double>(c.ss) / static_cast<double>(c.ss + c.sl);
  if (c.ss + c.ls > 0) rp.sp = static_cast<double>(c.ss) / static_cast<double>(c.ss + c.ls);
  return rp;
}

MetricsReport metrics_report(const ConfusionCounts& c, double lambda, long baseline_n_l,
                             long baseline_n_s) {
  return aggregate_folds(std::span<const ConfusionCounts>(&c, 1), lambda, baseline_n_l,
                         baseline_n_s);
}

MetricsReport aggregate_folds(std::span<const ConfusionCounts> per_fold, double lambda,
                              long baseline_n_l, long baseline_n_s, bool macro_sr_sp) {
  check_lambda(lambda);
  if (per_fold.empty()) throw std::invalid_argument("no folds to aggregate");

  MetricsReport r;
  r.lambda = lambda;
  double wacc_sum = 0.0;
  for (const ConfusionCounts& c : per_fold) {
    wacc_sum += weighted_accuracy(c, lambda);
    r.counts += c;
  }
  r.wacc = wacc_sum / static_cast<double>(per_fold.size());
  r.werr = 1.0 - r.wacc;
  r.baseline_wacc = baseline_wacc(baseline_n_l, baseline_n_s, lambda);
  r.baseline_werr = 1.0 - r.baseline_wacc;
  r.tcr = r.werr > 0.0 ? r.baseline_werr / r.werr : std::numeric_limits<double>::infinity();

  if (macro_sr_sp) {
    double sr_sum = 0.0, sp_sum = 0.0;
    long sr_n = 0, sp_n = 0;
    for (const ConfusionCounts& c : per_fold) {
      const RecallPrecision rp = spam_recall_precision(c);
      if (rp.sr) {
        sr_sum += *rp.sr;
        ++sr_n;
      }
      if (rp.sp) {
        sp_sum += *rp.sp;
        ++sp_n;
      }
    }
    if (sr_n > 0) r.sr = sr_sum / static_cast<double>(sr_n);
    if (sp_n > 0) r.sp = sp_sum / static_cast<double>(sp_n);
  } else {
    const RecallPrecision rp = spam_recall_precision(r.counts);
    r.sr = rp.sr;
    r.sp = rp.sp;
  }
  return r;
}

OverlapTable error_overlap(std::span<const Category> a_verdicts,
                           std::span<const Category> b_verdicts,
                           std::span<const Category> truths) {
  if (a_verdicts.size() != truths.size() || b_verdicts.size() != truths.size()) {
    throw std::invalid_argument("verdict sequences are not aligned");
  }
  long n_legit = 0, n_spam = 0;
  long one_legit = 0, both_legit = 0, one_spam = 0, both_spam = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool a_err = a_verdicts[i] != truths[i];
    const bool b_err = b_verdicts[i] != truths[i];
    const bool is_spam = truths[i] == Category::spam;
    (is_spam ? n_spam : n_legit)++;
    if (a_err && b_err) {
      (is_spam ? both_spam : both_legit)++;
    } else if (a_err || b_err) {
      (is_spam ? one_spam : one_legit)++;
    }
  }
  auto pct = [](long num, long denom) {
    return denom > 0 ? 100.0 * static_cast<double>(num) / static_cast<double>(denom) : 0.0;
  };
  OverlapTable t;
  t.legitimate = {pct(one_legit, n_legit), pct(both_legit, n_legit)};
  t.spam = {pct(one_spam, n_spam), pct(both_spam, n_spam)};
  t.all = {pct(one_legit + one_spam, n_legit + n_spam), pct(both_legit + both_spam, n_legit + n_spam)};
  return t;
}

std::string csv_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_value(std::optional<double> v) { return v ? csv_value(*v) : std::string(); }

std::string csv_value(std::optional<int> v) { return v ? std::to_string(*v) : std::string(); }

std::string csv_metrics_cells(const MetricsReport& r) {
  return csv_value(r.sr) + "," + csv_value(r.sp) + "," + csv_value(r.wacc) + "," +
         csv_value(r.tcr);
}

namespace {

std::string fmt(const char* format, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string pct1(std::optional<double> v) { return v ? fmt("%.1f", 100.0 * *v) : "-"; }

std::string tcr2(double v) { return std::isinf(v) ? "inf" : fmt("%.2f", v); }

}  // namespace

std::string markdown_results_table(std::string_view caption, std::span<const ResultRow> rows) {
  std::string out;
  out.append(caption).append("\n\n");
  out += "| scenario | k | m | SR (%) | SP (%) | TCR |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const ResultRow& row : rows) {
    out += "| " + row.scenario + " | ";
    out += row.k ? std::to_string(*row.k) : std::string("-");
    out += " | " + std::to_string(row.m) + " | " + pct1(row.report.sr) + " | " +
           pct1(row.report.sp) + " | " + tcr2(row.report.tcr) + " |\n";
  }
  return out;
}

std::string markdown_overlap_table(double lambda, const OverlapTable& t) {
  std::string out;
  out += "| category (lambda=" + fmt("%g", lambda) + ") | only one fails (%) | both fail (%) |\n";
  out += "|---|---|---|\n";
  auto row = [&](const char* name, const OverlapRow& r) {
    out += std::string("| ") + name + " | " + fmt("%.2f", r.only_one_pct) + " | " +
           fmt("%.2f", r.both_pct) + " |\n";
  };
  row("legitimate", t.legitimate);
  row("spam", t.spam);
  row("all", t.all);
  return out;
}

}  // namespace spamstack
