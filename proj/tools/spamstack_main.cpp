// Experiment runner: corpus stats, member and stacking cross-validation
// runs, president (k, m) sweeps, and member error-overlap reports.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "spamstack/corpus.hpp"
#include "spamstack/experiment.hpp"
#include "spamstack/metrics.hpp"
#include "spamstack/preprocess.hpp"

namespace {

using namespace spamstack;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << content;
}

std::string describe(const MetricsReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "lambda=%g wacc=%.6f werr=%.6f baseline_wacc=%.6f tcr=%s sr=%s sp=%s "
                "[ll=%ld ls=%ld sl=%ld ss=%ld]",
                r.lambda, r.wacc, r.werr, r.baseline_wacc, csv_value(r.tcr).c_str(),
                csv_value(r.sr).c_str(), csv_value(r.sp).c_str(), r.counts.ll, r.counts.ls,
                r.counts.sl, r.counts.ss);
  return buf;
}

void emit_run_outputs(const ExperimentConfig& cfg, const std::string& variant_name,
                      std::optional<int> k, std::optional<int> m, const MetricsReport& report) {
  std::cout << variant_name << ": " << describe(report) << "\n";
  if (!cfg.csv_path.empty()) {
    write_file(cfg.csv_path, csv_header() + "\n" + csv_row(cfg, variant_name, k, m, report) + "\n");
    std::cout << "wrote " << cfg.csv_path << "\n";
  }
  if (!cfg.md_path.empty()) {
    char scenario[32];
    std::snprintf(scenario, sizeof(scenario), "lambda=%g", cfg.lambda);
    const ResultRow row{scenario, k, m.value_or(0), report};
    write_file(cfg.md_path,
               markdown_results_table(variant_name, std::span<const ResultRow>(&row, 1)));
    std::cout << "wrote " << cfg.md_path << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Cost-sensitive stacked spam filtering experiments"};
  app.set_config("--config", "", "Read key=value defaults from a file");
  app.require_subcommand(1);

  ExperimentConfig cfg;
  app.add_option("--corpus", cfg.corpus_path, "Corpus root directory (one file per message)")
      ->envname("LINGSPAM_DIR");
  app.add_option("--lambda", cfg.lambda, "Cost of a legitimate->spam error")->check(CLI::PositiveNumber);
  app.add_option("--folds", cfg.folds, "Outer cross-validation folds");
  app.add_option("--inner-folds", cfg.inner_folds, "Inner stacking folds");
  app.add_option("--seed", cfg.seed, "Shuffle seed recorded in all reports");
  app.add_option("--folds-mode", cfg.folds_mode, "Fold source")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, FoldsMode>{{"stratified", FoldsMode::stratified},
                                           {"distributed", FoldsMode::distributed}}));
  app.add_option("--ig-scope", cfg.ig_scope, "Attribute selection scope")
      ->transform(CLI::CheckedTransformer(std::map<std::string, IgScope>{
          {"per-fold", IgScope::per_fold}, {"global", IgScope::global}}));
  app.add_option("--k-semantics", cfg.k_semantics, "Neighborhood semantics")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, KSemantics>{{"distance-bands", KSemantics::distance_bands},
                                            {"instances", KSemantics::instances}}));
  app.add_option("--conf-weight", cfg.conf_weight, "President confidence-attribute weights")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ConfWeight>{
          {"ig-binned", ConfWeight::ig_binned}, {"unit", ConfWeight::unit}}));
  app.add_flag("--macro-sr-sp", cfg.macro_sr_sp, "Average SR/SP per fold instead of pooling counts");
  app.add_flag("--include-subject,!--no-subject", cfg.include_subject,
               "Keep the Subject line in message text");
  app.add_option("--min-doc-freq", cfg.min_doc_freq, "Prune lemmas in fewer messages than this");
  app.add_option("--nb-m", cfg.nb.m, "Naive Bayes attribute count");
  app.add_option("--nb-smoothing", cfg.nb.smoothing, "Naive Bayes pseudo-count");
  app.add_option("--knn-k", cfg.knn.k, "k-NN neighborhood size");
  app.add_option("--knn-m", cfg.knn.m, "k-NN attribute count");
  app.add_option("--variant", cfg.variant, "Stacking protocol")
      ->transform(CLI::CheckedTransformer(std::map<std::string, StackingVariant>{
          {"cross-validation", StackingVariant::cross_validation},
          {"holdout", StackingVariant::holdout}}));
  app.add_option("--president-k", cfg.president_k, "President neighborhood size");
  app.add_option("--president-m", cfg.president_m, "President word-attribute count");
  app.add_option("--sweep-k", cfg.sweep_k, "Sweep k values (default 1..10)");
  app.add_option("--sweep-m", cfg.sweep_m, "Sweep m values (default 50..700 step 50)");
  app.add_option("--csv", cfg.csv_path, "Write results as CSV to this path");
  app.add_option("--md", cfg.md_path, "Write a markdown results table to this path");
  app.add_option("--attr-dump", cfg.attr_dump_path, "Write ranked attributes to this path");

  auto* stats_cmd = app.add_subcommand("stats", "Corpus and vocabulary summary");
  int stats_m = 100;
  stats_cmd->add_option("-m,--attributes", stats_m, "Attributes to include in --attr-dump");

  auto* member_cmd = app.add_subcommand("member", "Cross-validate one member classifier");
  MemberKind which = MemberKind::nb;
  member_cmd->add_option("--member", which, "Which member to run")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MemberKind>{{"nb", MemberKind::nb}, {"knn", MemberKind::knn}}))
      ->required();

  auto* stack_cmd = app.add_subcommand("stack", "Cross-validate the stacked filter");
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate the president (k, m) grid");
  bool sweep_single_variant = false;
  sweep_cmd->add_flag("--only-variant", sweep_single_variant,
                      "Sweep only --variant instead of both protocols");
  auto* overlap_cmd = app.add_subcommand("overlap", "Member error-overlap table");

  // Global options are valid on either side of the subcommand name.
  for (CLI::App* sub : {stats_cmd, member_cmd, stack_cmd, sweep_cmd, overlap_cmd}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  if (cfg.corpus_path.empty()) {
    std::cerr << "error: no corpus path (use --corpus or LINGSPAM_DIR)\n";
    return 1;
  }
  const Corpus corpus = load_lingspam(cfg.corpus_path, {cfg.include_subject});
  resolve_defaults(cfg);

  if (stats_cmd->parsed()) {
    const CorpusStats s = compute_corpus_stats(corpus, cfg);
    std::printf("messages: %ld\nlegitimate: %ld\nspam: %ld\nspam fraction: %.1f%%\n",
                s.n_legit + s.n_spam, s.n_legit, s.n_spam, 100.0 * s.spam_fraction);
    std::printf("vocabulary: %zu lemmas, %zu after pruning (min_doc_freq=%d)\n",
                s.vocab_before_pruning, s.vocab_after_pruning, cfg.min_doc_freq);
    if (!cfg.attr_dump_path.empty()) {
      const Vocabulary vocab = build_vocabulary(corpus, cfg.min_doc_freq);
      write_file(cfg.attr_dump_path, attribute_dump(select_attributes(vocab, corpus, stats_m)));
      std::cout << "wrote " << cfg.attr_dump_path << "\n";
    }
    return 0;
  }

  if (member_cmd->parsed()) {
    const RunResult result = run_member_cv(corpus, cfg, which);
    const std::optional<int> k =
        which == MemberKind::knn ? std::optional<int>(cfg.knn.k) : std::nullopt;
    const int m = which == MemberKind::knn ? cfg.knn.m : cfg.nb.m;
    emit_run_outputs(cfg, to_string(which), k, m, result.report);
    return 0;
  }

  if (stack_cmd->parsed()) {
    const RunResult result = run_stack(corpus, cfg);
    emit_run_outputs(cfg, to_string(cfg.variant), cfg.president_k, cfg.president_m,
                     result.report);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    std::vector<StackingVariant> variants;
    if (sweep_single_variant) {
      variants = {cfg.variant};
    } else {
      variants = {StackingVariant::cross_validation, StackingVariant::holdout};
    }
    const SweepResult sweep = run_sweep(corpus, cfg, variants);
    std::cout << "nb member: " << describe(sweep.nb_member) << "\n";
    std::cout << "knn member: " << describe(sweep.knn_member) << "\n";
    long beating = 0;
    for (const SweepCell& cell : sweep.cells) beating += cell.beats_best_member ? 1 : 0;
    std::printf("%ld of %zu president cells beat the best member TCR (%s)\n", beating,
                sweep.cells.size(), csv_value(sweep.best_member_tcr).c_str());
    const std::string path = cfg.csv_path.empty() ? "sweep.csv" : cfg.csv_path;
    write_file(path, sweep_csv(cfg, sweep));
    std::cout << "wrote " << path << "\n";
    return 0;
  }

  if (overlap_cmd->parsed()) {
    const OverlapResult result = run_overlap(corpus, cfg);
    std::cout << "nb member: " << describe(result.nb_member) << "\n";
    std::cout << "knn member: " << describe(result.knn_member) << "\n";
    std::cout << markdown_overlap_table(cfg.lambda, result.table);
    if (!cfg.md_path.empty()) {
      write_file(cfg.md_path, markdown_overlap_table(cfg.lambda, result.table));
      std::cout << "wrote " << cfg.md_path << "\n";
    }
    return 0;
  }

  return 1;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
