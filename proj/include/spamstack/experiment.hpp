#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spamstack/corpus.hpp"
#include "spamstack/members.hpp"
#include "spamstack/metrics.hpp"
#include "spamstack/stacking.hpp"

namespace spamstack {

enum class FoldsMode { stratified, distributed };
enum class IgScope { per_fold, global };
enum class MemberKind { nb, knn };

const char* to_string(FoldsMode m);
const char* to_string(IgScope s);
const char* to_string(KSemantics s);
const char* to_string(ConfWeight w);
const char* to_string(MemberKind k);

struct ExperimentConfig {
  std::string corpus_path;
  double lambda = 1.0;
  int folds = 10;
  int inner_folds = 3;
  std::uint64_t seed = 0;
  FoldsMode folds_mode = FoldsMode::stratified;
  IgScope ig_scope = IgScope::per_fold;
  KSemantics k_semantics = KSemantics::distance_bands;
  ConfWeight conf_weight = ConfWeight::ig_binned;
  bool macro_sr_sp = false;
  bool include_subject = true;
  int min_doc_freq = 4;

  // -1 marks "unset"; resolve_defaults fills the best configuration for the
  // cost scenario (and variant, for the president).
  NbParams nb{-1, -1.0};
  KnnParams knn{-1, -1};

  StackingVariant variant = StackingVariant::cross_validation;
  int president_k = -1;
  int president_m = -1;

  std::vector<int> sweep_k;  // default 1..10
  std::vector<int> sweep_m;  // default 50..700 step 50

  std::string csv_path;
  std::string md_path;
  std::string attr_dump_path;
};

// Best member configurations per cost scenario.
NbParams default_nb_params(double lambda);
KnnParams default_knn_params(double lambda);
// Best president (k, m) per variant and cost scenario.
std::pair<int, int> default_president_km(StackingVariant variant, double lambda);
// Applies the defaults above to fields left at their -1 "unset" sentinel.
void resolve_defaults(ExperimentConfig& config);

std::vector<int> default_sweep_k();
std::vector<int> default_sweep_m();

struct CorpusStats {
  long n_legit = 0;
  long n_spam = 0;
  double spam_fraction = 0.0;
  std::size_t vocab_before_pruning = 0;
  std::size_t vocab_after_pruning = 0;
};

CorpusStats compute_corpus_stats(const Corpus& corpus, const ExperimentConfig& config);

FoldPlan make_fold_plan(const Corpus& corpus, const ExperimentConfig& config);

struct RunResult {
  MetricsReport report;
  std::vector<ConfusionCounts> per_fold;
  // Verdicts and truths aligned with corpus order (one entry per message).
  std::vector<Category> verdicts;
  std::vector<Category> truths;
};

RunResult run_member_cv(const Corpus& corpus, const ExperimentConfig& config, MemberKind which);

RunResult run_stack(const Corpus& corpus, const ExperimentConfig& config);

struct SweepCell {
  StackingVariant variant = StackingVariant::cross_validation;
  int k = 0;
  int m = 0;
  MetricsReport report;
  bool beats_best_member = false;
};

struct SweepResult {
  MetricsReport nb_member;
  MetricsReport knn_member;
  double best_member_tcr = 0.0;
  std::vector<SweepCell> cells;  // variant-major, then m, then k
};

// Evaluates the president grid for one or both variants, reusing fold plans
// and member confidences across cells.
SweepResult run_sweep(const Corpus& corpus, const ExperimentConfig& config,
                      const std::vector<StackingVariant>& variants);

struct OverlapResult {
  OverlapTable table;
  MetricsReport nb_member;
  MetricsReport knn_member;
};

OverlapResult run_overlap(const Corpus& corpus, const ExperimentConfig& config);

// ---- CSV emission ----
// Fixed metric columns first, then the full reproducing configuration.

std::string csv_header();
std::string csv_row(const ExperimentConfig& config, std::string_view variant_name,
                    std::optional<int> k, std::optional<int> m, const MetricsReport& report,
                    std::optional<bool> beats_best_member = std::nullopt);
std::string sweep_csv(const ExperimentConfig& config, const SweepResult& sweep);

}  // namespace spamstack
