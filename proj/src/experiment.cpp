#include "spamstack/experiment.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace spamstack {

const char* to_string(FoldsMode m) {
  return m == FoldsMode::distributed ? "distributed" : "stratified";
}
const char* to_string(IgScope s) { return s == IgScope::global ? "global" : "per-fold"; }
const char* to_string(KSemantics s) {
  return s == KSemantics::instances ? "instances" : "distance-bands";
}
const char* to_string(ConfWeight w) { return w == ConfWeight::unit ? "unit" : "ig-binned"; }
const char* to_string(MemberKind k) { return k == MemberKind::nb ? "nb" : "knn"; }

NbParams default_nb_params(double lambda) {
  (void)lambda;  // m = 100 is the best configuration in both cost scenarios
  return {100, 1.0};
}

KnnParams default_knn_params(double lambda) {
  return lambda == 9.0 ? KnnParams{2, 700} : KnnParams{8, 600};
}

std::pair<int, int> default_president_km(StackingVariant variant, double lambda) {
  if (variant == StackingVariant::holdout) {
    return lambda == 9.0 ? std::pair{3, 200} : std::pair{5, 100};
  }
  return lambda == 9.0 ? std::pair{3, 100} : std::pair{7, 300};
}

std::vector<int> default_sweep_k() {
  std::vector<int> ks(10);
  std::iota(ks.begin(), ks.end(), 1);
  return ks;
}

std::vector<int> default_sweep_m() {
  std::vector<int> ms;
  for (int m = 50; m <= 700; m += 50) ms.push_back(m);
  return ms;
}

void resolve_defaults(ExperimentConfig& config) {
  if (config.nb.m < 0) config.nb.m = default_nb_params(config.lambda).m;
  if (config.nb.smoothing < 0) config.nb.smoothing = 1.0;
  const KnnParams knn_defaults = default_knn_params(config.lambda);
  if (config.knn.k < 0) config.knn.k = knn_defaults.k;
  if (config.knn.m < 0) config.knn.m = knn_defaults.m;
  const auto [pk, pm] = default_president_km(config.variant, config.lambda);
  if (config.president_k < 0) config.president_k = pk;
  if (config.president_m < 0) config.president_m = pm;
  if (config.sweep_k.empty()) config.sweep_k = default_sweep_k();
  if (config.sweep_m.empty()) config.sweep_m = default_sweep_m();
}

namespace {

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (cfg.folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (cfg.inner_folds < 2) throw std::invalid_argument("inner_folds must be at least 2");
  if (cfg.min_doc_freq < 1) throw std::invalid_argument("min_doc_freq must be at least 1");
  if (cfg.nb.m < 1 || cfg.knn.m < 1 || cfg.president_m < 1) {
    throw std::invalid_argument("attribute counts must be at least 1");
  }
  if (cfg.knn.k < 1 || cfg.president_k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(cfg.nb.smoothing > 0.0)) throw std::invalid_argument("smoothing must be positive");
  for (int k : cfg.sweep_k) {
    if (k < 1) throw std::invalid_argument("sweep k values must be at least 1");
  }
  for (int m : cfg.sweep_m) {
    if (m < 1) throw std::invalid_argument("sweep m values must be at least 1");
  }
}

struct FoldIds {
  std::vector<int> train;
  std::vector<int> test;
};

struct Context {
  const Corpus* corpus = nullptr;
  ExperimentConfig cfg;  // resolved
  IndexedCorpus idx;
  FoldPlan plan;
  std::vector<FoldIds> folds;
  std::vector<std::shared_ptr<const RankedAttributes>> ranking;  // per fold
};

Context make_context(const Corpus& corpus, const ExperimentConfig& config) {
  Context ctx;
  ctx.corpus = &corpus;
  ctx.cfg = config;
  resolve_defaults(ctx.cfg);
  validate(ctx.cfg);

  ctx.idx = index_corpus(corpus);
  ctx.plan = make_fold_plan(corpus, ctx.cfg);
  ctx.cfg.folds = ctx.plan.n_folds;

  ctx.folds.resize(static_cast<std::size_t>(ctx.plan.n_folds));
  for (int i = 0; i < corpus.size(); ++i) {
    const int f = ctx.plan.fold_of(corpus.at(i).id);
    for (int j = 0; j < ctx.plan.n_folds; ++j) {
      (j == f ? ctx.folds[static_cast<std::size_t>(j)].test
              : ctx.folds[static_cast<std::size_t>(j)].train)
          .push_back(i);
    }
  }

  if (ctx.cfg.ig_scope == IgScope::global) {
    std::vector<int> all(static_cast<std::size_t>(corpus.size()));
    std::iota(all.begin(), all.end(), 0);
    auto global = std::make_shared<const RankedAttributes>(
        rank_attributes(ctx.idx, all, ctx.cfg.min_doc_freq));
    ctx.ranking.assign(static_cast<std::size_t>(ctx.plan.n_folds), global);
  } else {
    for (const FoldIds& f : ctx.folds) {
      ctx.ranking.push_back(std::make_shared<const RankedAttributes>(
          rank_attributes(ctx.idx, f.train, ctx.cfg.min_doc_freq)));
    }
  }
  return ctx;
}

MemberTrainingOptions outer_member_options(const Context& ctx, int fold) {
  MemberTrainingOptions opts;
  opts.min_doc_freq = ctx.cfg.min_doc_freq;
  opts.fixed_ranking = ctx.ranking[static_cast<std::size_t>(fold)];
  return opts;
}

// Members used inside the stacking inner CV: they must select attributes on
// their own training part, so only the global IG scope pins a ranking.
MemberPair inner_member_pair(const Context& ctx) {
  MemberTrainingOptions opts;
  opts.min_doc_freq = ctx.cfg.min_doc_freq;
  if (ctx.cfg.ig_scope == IgScope::global) opts.fixed_ranking = ctx.ranking[0];
  return {make_nb_trainer(ctx.cfg.nb, opts),
          make_knn_trainer(ctx.cfg.knn, ctx.cfg.k_semantics, opts)};
}

struct MemberRun {
  MetricsReport report;
  std::vector<ConfusionCounts> per_fold;
  std::vector<Category> verdicts;  // corpus-aligned
};

MemberRun member_run(const Context& ctx, MemberKind which) {
  MemberRun run;
  run.verdicts.assign(static_cast<std::size_t>(ctx.corpus->size()), Category::legitimate);
  for (std::size_t f = 0; f < ctx.folds.size(); ++f) {
    const FoldIds& fold = ctx.folds[f];
    const MemberTrainingOptions opts = outer_member_options(ctx, static_cast<int>(f));
    const MemberTrainer trainer =
        which == MemberKind::nb
            ? make_nb_trainer(ctx.cfg.nb, opts)
            : make_knn_trainer(ctx.cfg.knn, ctx.cfg.k_semantics, opts);
    const std::unique_ptr<MemberModel> model = trainer(ctx.idx, fold.train);
    const std::vector<Confidence> confs = model->score(ctx.idx, fold.test);

    std::vector<Category> verdicts(confs.size());
    std::vector<Category> truths(confs.size());
    for (std::size_t i = 0; i < confs.size(); ++i) {
      verdicts[i] = classify(confs[i], ctx.cfg.lambda);
      truths[i] = ctx.corpus->at(fold.test[i]).label;
      run.verdicts[static_cast<std::size_t>(fold.test[i])] = verdicts[i];
    }
    run.per_fold.push_back(count_confusion(verdicts, truths));
  }
  run.report = aggregate_folds(run.per_fold, ctx.cfg.lambda, ctx.corpus->n_legit(),
                               ctx.corpus->n_spam(), ctx.cfg.macro_sr_sp);
  return run;
}

// Per-fold state reused across every president (variant, k, m) cell.
struct StackFold {
  std::vector<Category> train_labels;
  std::vector<Category> test_labels;
  InnerScores inner;
  std::vector<std::vector<int>> part_rows;  // train positions per inner part
  Eigen::Vector2d conf_w_cv;
  std::vector<Eigen::Vector2d> conf_w_part;
  Eigen::MatrixXd train_words;  // m_max word columns, train order
  Eigen::MatrixXd test_words;
  Eigen::VectorXd ig_prefix;    // m_max attribute weights
  int m_max = 0;
  std::vector<Confidence> nb_test_full, knn_test_full;  // cross-validation queries
  std::vector<std::vector<Confidence>> nb_test_part, knn_test_part;  // holdout queries
};

StackFold build_stack_fold(const Context& ctx, int fold, int m_wanted, bool need_cv,
                           bool need_holdout) {
  const FoldIds& ids = ctx.folds[static_cast<std::size_t>(fold)];
  const RankedAttributes& ranking = *ctx.ranking[static_cast<std::size_t>(fold)];
  if (ranking.size() == 0) throw std::runtime_error("no attributes survive pruning");

  StackFold sf;
  for (int i : ids.train) sf.train_labels.push_back(ctx.corpus->at(i).label);
  for (int i : ids.test) sf.test_labels.push_back(ctx.corpus->at(i).label);

  sf.m_max = std::min(m_wanted, ranking.size());
  const std::span<const int> attr_ids(ranking.lemma_ids.data(),
                                      static_cast<std::size_t>(sf.m_max));
  sf.train_words = binary_matrix(ctx.idx, ids.train, attr_ids);
  sf.test_words = binary_matrix(ctx.idx, ids.test, attr_ids);
  sf.ig_prefix = Eigen::Map<const Eigen::VectorXd>(ranking.ig.data(), sf.m_max);

  // The inner split is seeded per outer fold so folds stay independent.
  sf.inner = compute_inner_scores(ctx.idx, ids.train, ctx.cfg.inner_folds,
                                  ctx.cfg.seed + static_cast<std::uint64_t>(fold),
                                  inner_member_pair(ctx));
  sf.conf_w_cv = confidence_weights(sf.inner.nb_conf, sf.inner.knn_conf, sf.train_labels,
                                    ctx.cfg.conf_weight);

  sf.part_rows.resize(static_cast<std::size_t>(ctx.cfg.inner_folds));
  for (std::size_t i = 0; i < sf.inner.part_of.size(); ++i) {
    sf.part_rows[static_cast<std::size_t>(sf.inner.part_of[i])].push_back(static_cast<int>(i));
  }
  for (const std::vector<int>& rows : sf.part_rows) {
    std::vector<Confidence> nb_c, knn_c;
    std::vector<Category> lab;
    for (int r : rows) {
      nb_c.push_back(sf.inner.nb_conf[static_cast<std::size_t>(r)]);
      knn_c.push_back(sf.inner.knn_conf[static_cast<std::size_t>(r)]);
      lab.push_back(sf.train_labels[static_cast<std::size_t>(r)]);
    }
    sf.conf_w_part.push_back(confidence_weights(nb_c, knn_c, lab, ctx.cfg.conf_weight));
  }

  if (need_cv) {
    const MemberTrainingOptions opts = outer_member_options(ctx, fold);
    const auto nb = make_nb_trainer(ctx.cfg.nb, opts)(ctx.idx, ids.train);
    const auto knn =
        make_knn_trainer(ctx.cfg.knn, ctx.cfg.k_semantics, opts)(ctx.idx, ids.train);
    sf.nb_test_full = nb->score(ctx.idx, ids.test);
    sf.knn_test_full = knn->score(ctx.idx, ids.test);
  }
  if (need_holdout) {
    for (int p = 0; p < ctx.cfg.inner_folds; ++p) {
      sf.nb_test_part.push_back(sf.inner.part_nb[static_cast<std::size_t>(p)]->score(ctx.idx, ids.test));
      sf.knn_test_part.push_back(sf.inner.part_knn[static_cast<std::size_t>(p)]->score(ctx.idx, ids.test));
    }
  }
  return sf;
}

Eigen::MatrixXd assemble_enhanced(const Eigen::MatrixXd& words, int m_eff,
                                  std::span<const Confidence> nb,
                                  std::span<const Confidence> knn,
                                  const std::vector<int>* rows = nullptr) {
  const Eigen::Index n = rows ? static_cast<Eigen::Index>(rows->size()) : words.rows();
  Eigen::MatrixXd x(n, m_eff + 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = rows ? (*rows)[static_cast<std::size_t>(i)] : i;
    x.row(i).head(m_eff) = words.row(src).head(m_eff);
    const std::size_t ci = static_cast<std::size_t>(rows ? src : i);
    x(i, m_eff) = nb[ci].w_spam;
    x(i, m_eff + 1) = knn[ci].w_spam;
  }
  return x;
}

Eigen::VectorXd enhanced_weights(const Eigen::VectorXd& ig_prefix, int m_eff,
                                 const Eigen::Vector2d& conf_w) {
  Eigen::VectorXd w(m_eff + 2);
  w.head(m_eff) = ig_prefix.head(m_eff);
  w(m_eff) = conf_w(0);
  w(m_eff + 1) = conf_w(1);
  return w;
}

// Evaluates one president memory against the fold's test set for every k at
// once; appends one ConfusionCounts per k to `out[k index]`, and optionally
// records the first k's verdicts.
void eval_president(Eigen::MatrixXd memory, std::vector<Category> memory_labels,
                    Eigen::VectorXd weights, int m_eff, const Eigen::MatrixXd& queries,
                    const std::vector<Category>& truths, std::span<const int> ks,
                    const Context& ctx, std::vector<std::vector<ConfusionCounts>>& out,
                    std::vector<Category>* first_k_verdicts = nullptr) {
  const MemoryBasedModel model = make_memory_model(std::move(memory), std::move(memory_labels),
                                                   std::move(weights), 1, ctx.cfg.k_semantics,
                                                   m_eff);
  const Eigen::MatrixXd dist = pairwise_distances(model, queries);

  std::vector<ConfusionCounts> counts(ks.size());
  if (first_k_verdicts) first_k_verdicts->resize(static_cast<std::size_t>(queries.rows()));
  for (Eigen::Index r = 0; r < queries.rows(); ++r) {
    const std::vector<Confidence> votes = knn_votes_multi_k(
        dist.row(r).transpose(), model.labels, ks, ctx.cfg.k_semantics);
    const bool is_spam = truths[static_cast<std::size_t>(r)] == Category::spam;
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      const Category verdict = classify(votes[ki], ctx.cfg.lambda);
      if (ki == 0 && first_k_verdicts) {
        (*first_k_verdicts)[static_cast<std::size_t>(r)] = verdict;
      }
      ConfusionCounts& c = counts[ki];
      if (is_spam) {
        (verdict == Category::spam ? c.ss : c.sl)++;
      } else {
        (verdict == Category::spam ? c.ls : c.ll)++;
      }
    }
  }
  for (std::size_t ki = 0; ki < ks.size(); ++ki) out[ki].push_back(counts[ki]);
}

// President evaluations for one fold at word count m: one per k for
// cross-validation, inner_folds per k for holdout.
void eval_stack_fold(const Context& ctx, const StackFold& sf, StackingVariant variant, int m,
                     std::span<const int> ks, std::vector<std::vector<ConfusionCounts>>& out,
                     std::vector<Category>* first_k_verdicts = nullptr) {
  const int m_eff = std::min(m, sf.m_max);
  if (variant == StackingVariant::cross_validation) {
    Eigen::MatrixXd memory =
        assemble_enhanced(sf.train_words, m_eff, sf.inner.nb_conf, sf.inner.knn_conf);
    const Eigen::MatrixXd queries =
        assemble_enhanced(sf.test_words, m_eff, sf.nb_test_full, sf.knn_test_full);
    eval_president(std::move(memory), sf.train_labels,
                   enhanced_weights(sf.ig_prefix, m_eff, sf.conf_w_cv), m_eff, queries,
                   sf.test_labels, ks, ctx, out, first_k_verdicts);
  } else {
    for (std::size_t p = 0; p < sf.part_rows.size(); ++p) {
      const std::vector<int>& rows = sf.part_rows[p];
      Eigen::MatrixXd memory = assemble_enhanced(sf.train_words, m_eff, sf.inner.nb_conf,
                                                 sf.inner.knn_conf, &rows);
      std::vector<Category> labels;
      labels.reserve(rows.size());
      for (int r : rows) labels.push_back(sf.train_labels[static_cast<std::size_t>(r)]);
      const Eigen::MatrixXd queries =
          assemble_enhanced(sf.test_words, m_eff, sf.nb_test_part[p], sf.knn_test_part[p]);
      eval_president(std::move(memory), std::move(labels),
                     enhanced_weights(sf.ig_prefix, m_eff, sf.conf_w_part[p]), m_eff, queries,
                     sf.test_labels, ks, ctx, out, nullptr);
    }
  }
}

}  // namespace

CorpusStats compute_corpus_stats(const Corpus& corpus, const ExperimentConfig& config) {
  if (corpus.size() == 0) throw std::invalid_argument("empty corpus");
  CorpusStats stats;
  stats.n_legit = corpus.n_legit();
  stats.n_spam = corpus.n_spam();
  stats.spam_fraction = static_cast<double>(stats.n_spam) / static_cast<double>(corpus.size());

  const IndexedCorpus idx = index_corpus(corpus);
  std::vector<long> df(idx.lexicon.size(), 0);
  for (const std::vector<int>& ids : idx.msg_lemmas) {
    for (int id : ids) ++df[static_cast<std::size_t>(id)];
  }
  stats.vocab_before_pruning = idx.lexicon.size();
  stats.vocab_after_pruning = static_cast<std::size_t>(
      std::count_if(df.begin(), df.end(), [&](long f) { return f >= config.min_doc_freq; }));
  return stats;
}

FoldPlan make_fold_plan(const Corpus& corpus, const ExperimentConfig& config) {
  if (config.folds_mode == FoldsMode::distributed) return folds_from_parts(corpus);
  return stratified_folds(corpus, config.folds, config.seed);
}

RunResult run_member_cv(const Corpus& corpus, const ExperimentConfig& config, MemberKind which) {
  const Context ctx = make_context(corpus, config);
  MemberRun run = member_run(ctx, which);
  return {std::move(run.report), std::move(run.per_fold), std::move(run.verdicts),
          corpus.labels()};
}

RunResult run_stack(const Corpus& corpus, const ExperimentConfig& config) {
  const Context ctx = make_context(corpus, config);
  const bool cv = ctx.cfg.variant == StackingVariant::cross_validation;
  const std::vector<int> ks = {ctx.cfg.president_k};

  RunResult result;
  result.truths = corpus.labels();
  if (cv) result.verdicts.assign(result.truths.size(), Category::legitimate);

  std::vector<std::vector<ConfusionCounts>> counts(1);
  for (std::size_t f = 0; f < ctx.folds.size(); ++f) {
    const StackFold sf = build_stack_fold(ctx, static_cast<int>(f), ctx.cfg.president_m, cv, !cv);
    std::vector<Category> verdicts;
    eval_stack_fold(ctx, sf, ctx.cfg.variant, ctx.cfg.president_m, ks, counts,
                    cv ? &verdicts : nullptr);
    if (cv) {
      const FoldIds& ids = ctx.folds[f];
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        result.verdicts[static_cast<std::size_t>(ids.test[i])] = verdicts[i];
      }
    }
  }
  result.per_fold = std::move(counts[0]);
  result.report = aggregate_folds(result.per_fold, ctx.cfg.lambda, corpus.n_legit(),
                                  corpus.n_spam(), ctx.cfg.macro_sr_sp);
  if (!cv) result.verdicts.clear();  // holdout has 3 verdicts per message, none canonical
  return result;
}

SweepResult run_sweep(const Corpus& corpus, const ExperimentConfig& config,
                      const std::vector<StackingVariant>& variants) {
  if (variants.empty()) throw std::invalid_argument("no variants to sweep");
  const Context ctx = make_context(corpus, config);

  SweepResult result;
  result.nb_member = member_run(ctx, MemberKind::nb).report;
  result.knn_member = member_run(ctx, MemberKind::knn).report;
  result.best_member_tcr = std::max(result.nb_member.tcr, result.knn_member.tcr);

  const std::vector<int>& ks = ctx.cfg.sweep_k;
  const std::vector<int>& ms = ctx.cfg.sweep_m;
  const int m_max = *std::max_element(ms.begin(), ms.end());
  const bool need_cv = std::find(variants.begin(), variants.end(),
                                 StackingVariant::cross_validation) != variants.end();
  const bool need_holdout =
      std::find(variants.begin(), variants.end(), StackingVariant::holdout) != variants.end();

  // counts[variant index][m index][k index] -> one entry per president eval
  std::vector<std::vector<std::vector<std::vector<ConfusionCounts>>>> counts(variants.size());
  for (auto& per_m : counts) {
    per_m.resize(ms.size());
    for (auto& per_k : per_m) per_k.resize(ks.size());
  }

  for (std::size_t f = 0; f < ctx.folds.size(); ++f) {
    const StackFold sf =
        build_stack_fold(ctx, static_cast<int>(f), m_max, need_cv, need_holdout);
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
      for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        eval_stack_fold(ctx, sf, variants[vi], ms[mi], ks, counts[vi][mi]);
      }
    }
  }

  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        SweepCell cell;
        cell.variant = variants[vi];
        cell.k = ks[ki];
        cell.m = ms[mi];
        cell.report = aggregate_folds(counts[vi][mi][ki], ctx.cfg.lambda, corpus.n_legit(),
                                      corpus.n_spam(), ctx.cfg.macro_sr_sp);
        cell.beats_best_member = cell.report.tcr > result.best_member_tcr;
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

OverlapResult run_overlap(const Corpus& corpus, const ExperimentConfig& config) {
  const Context ctx = make_context(corpus, config);
  MemberRun nb = member_run(ctx, MemberKind::nb);
  MemberRun knn = member_run(ctx, MemberKind::knn);
  OverlapResult result;
  result.table = error_overlap(nb.verdicts, knn.verdicts, corpus.labels());
  result.nb_member = std::move(nb.report);
  result.knn_member = std::move(knn.report);
  return result;
}

std::string csv_header() {
  return std::string(kCsvFixedHeader) +
         ",seed,folds,inner_folds,folds_mode,ig_scope,k_semantics,conf_weight,macro_sr_sp,"
         "include_subject,min_doc_freq,nb_m,nb_smoothing,knn_k,knn_m,beats_best_member";
}

std::string csv_row(const ExperimentConfig& config, std::string_view variant_name,
                    std::optional<int> k, std::optional<int> m, const MetricsReport& report,
                    std::optional<bool> beats_best_member) {
  std::string row;
  row += csv_value(config.lambda);
  row += ',';
  row += variant_name;
  row += ',' + csv_value(k) + ',' + csv_value(m) + ',' + csv_metrics_cells(report);
  row += ',' + std::to_string(config.seed);
  row += ',' + std::to_string(config.folds);
  row += ',' + std::to_string(config.inner_folds);
  row += ',';
  row += to_string(config.folds_mode);
  row += ',';
  row += to_string(config.ig_scope);
  row += ',';
  row += to_string(config.k_semantics);
  row += ',';
  row += to_string(config.conf_weight);
  row += ',';
  row += config.macro_sr_sp ? "1" : "0";
  row += ',';
  row += config.include_subject ? "1" : "0";
  row += ',' + std::to_string(config.min_doc_freq);
  row += ',' + std::to_string(config.nb.m);
  row += ',' + csv_value(config.nb.smoothing);
  row += ',' + std::to_string(config.knn.k);
  row += ',' + std::to_string(config.knn.m);
  row += ',';
  if (beats_best_member) row += *beats_best_member ? "1" : "0";
  return row;
}

std::string sweep_csv(const ExperimentConfig& config, const SweepResult& sweep) {
  ExperimentConfig resolved = config;
  resolve_defaults(resolved);
  std::string out = csv_header() + "\n";
  out += csv_row(resolved, "nb", std::nullopt, resolved.nb.m, sweep.nb_member) + "\n";
  out += csv_row(resolved, "knn", resolved.knn.k, resolved.knn.m, sweep.knn_member) + "\n";
  for (const SweepCell& cell : sweep.cells) {
    out += csv_row(resolved, to_string(cell.variant), cell.k, cell.m, cell.report,
                   cell.beats_best_member) +
           "\n";
  }
  return out;
}

}  // namespace spamstack
