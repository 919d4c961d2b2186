#include "spamstack/stacking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace spamstack {

const char* to_string(StackingVariant v) {
  return v == StackingVariant::holdout ? "holdout" : "cross-validation";
}

EnhancedVector EnhancedDataset::row(int i) const {
  EnhancedVector v;
  v.words = x.row(i).head(word_dims).transpose();
  v.member_confidences = Eigen::Vector2d(x(i, word_dims), x(i, word_dims + 1));
  v.label = labels.at(static_cast<std::size_t>(i));
  return v;
}

MemberPair default_members(const StackingConfig& config) {
  MemberTrainingOptions opts;
  opts.min_doc_freq = config.min_doc_freq;
  opts.lemmatizer = config.lemmatizer;
  return {make_nb_trainer(config.nb, opts),
          make_knn_trainer(config.knn, config.k_semantics, opts)};
}

namespace {

std::vector<Category> subset_labels(const IndexedCorpus& idx, std::span<const int> ids) {
  std::vector<Category> labels;
  labels.reserve(ids.size());
  for (int i : ids) labels.push_back(idx.corpus->at(i).label);
  return labels;
}

void check_config(const StackingConfig& config) {
  if (config.inner_folds < 2) throw std::invalid_argument("inner_folds must be at least 2");
  if (config.president_k < 1) throw std::invalid_argument("president_k must be at least 1");
  if (config.president_m < 1) throw std::invalid_argument("president_m must be at least 1");
}

}  // namespace

InnerScores compute_inner_scores(const IndexedCorpus& idx, std::span<const int> train_ids,
                                 int inner_folds, std::uint64_t seed,
                                 const MemberPair& members) {
  const std::vector<Category> labels = subset_labels(idx, train_ids);
  InnerScores scores;
  try {
    scores.part_of = stratified_assignment(labels, inner_folds, seed);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("inner fold would lack a category");
  }
  scores.nb_conf.resize(train_ids.size());
  scores.knn_conf.resize(train_ids.size());

  for (int p = 0; p < inner_folds; ++p) {
    std::vector<int> fit_ids;
    std::vector<int> score_ids;
    std::vector<std::size_t> score_pos;
    for (std::size_t i = 0; i < train_ids.size(); ++i) {
      if (scores.part_of[i] == p) {
        score_ids.push_back(train_ids[i]);
        score_pos.push_back(i);
      } else {
        fit_ids.push_back(train_ids[i]);
      }
    }
    std::unique_ptr<MemberModel> nb = members.nb(idx, fit_ids);
    std::unique_ptr<MemberModel> knn = members.knn(idx, fit_ids);
    const std::vector<Confidence> nb_out = nb->score(idx, score_ids);
    const std::vector<Confidence> knn_out = knn->score(idx, score_ids);
    for (std::size_t i = 0; i < score_pos.size(); ++i) {
      scores.nb_conf[score_pos[i]] = nb_out[i];
      scores.knn_conf[score_pos[i]] = knn_out[i];
    }
    scores.part_nb.push_back(std::move(nb));
    scores.part_knn.push_back(std::move(knn));
  }
  return scores;
}

Eigen::Vector2d confidence_weights(std::span<const Confidence> nb,
                                   std::span<const Confidence> knn,
                                   std::span<const Category> labels, ConfWeight mode) {
  if (mode == ConfWeight::unit) return Eigen::Vector2d::Ones();
  if (nb.size() != labels.size() || knn.size() != labels.size()) {
    throw std::invalid_argument("confidences do not align with labels");
  }
  auto binned_ig = [&](std::span<const Confidence> conf) {
    // 10 equal-width bins over [0,1]; w_spam = 1 lands in the top bin.
    std::vector<std::array<long, 2>> bins(10, {0, 0});
    for (std::size_t i = 0; i < conf.size(); ++i) {
      const int b = std::min(9, static_cast<int>(conf[i].w_spam * 10.0));
      ++bins[static_cast<std::size_t>(b)][labels[i] == Category::spam ? 1 : 0];
    }
    return mutual_information_bits(bins);
  };
  return {binned_ig(nb), binned_ig(knn)};
}

namespace {

// Everything the president builders share: the indexed training corpus, its
// attribute ranking, the inner-CV member scores, and the enhanced matrix.
struct BuiltEnhanced {
  IndexedCorpus idx;
  std::vector<int> all_ids;
  MemberPair members;
  AttributeSet attrs;
  InnerScores inner;
  EnhancedDataset data;
};

BuiltEnhanced build_impl(const Corpus& train, const StackingConfig& config,
                         const MemberPair* members) {
  check_config(config);
  BuiltEnhanced b;
  b.idx = index_corpus(train, config.lemmatizer);
  b.all_ids.resize(static_cast<std::size_t>(train.size()));
  std::iota(b.all_ids.begin(), b.all_ids.end(), 0);
  b.members = members ? *members : default_members(config);

  b.inner = compute_inner_scores(b.idx, b.all_ids, config.inner_folds, config.seed, b.members);

  const RankedAttributes ranking = rank_attributes(b.idx, b.all_ids, config.min_doc_freq);
  if (ranking.size() == 0) throw std::runtime_error("no attributes survive pruning");
  const int m_eff = std::min(config.president_m, ranking.size());
  b.attrs = attribute_prefix(b.idx, ranking, m_eff);
  const std::span<const int> attr_ids(ranking.lemma_ids.data(), static_cast<std::size_t>(m_eff));

  const int n = train.size();
  b.data.x.resize(n, m_eff + 2);
  b.data.x.leftCols(m_eff) = binary_matrix(b.idx, b.all_ids, attr_ids);
  for (int i = 0; i < n; ++i) {
    b.data.x(i, m_eff) = b.inner.nb_conf[static_cast<std::size_t>(i)].w_spam;
    b.data.x(i, m_eff + 1) = b.inner.knn_conf[static_cast<std::size_t>(i)].w_spam;
  }
  b.data.labels = train.labels();
  b.data.ids.reserve(static_cast<std::size_t>(n));
  for (const Message& m : train.messages()) b.data.ids.push_back(m.id);
  b.data.scored_by_part = b.inner.part_of;
  b.data.word_dims = m_eff;
  return b;
}

Eigen::VectorXd stacked_weights(const AttributeSet& attrs, const Eigen::Vector2d& conf_w) {
  Eigen::VectorXd w(attrs.size() + 2);
  w.head(attrs.size()) = attrs.weights();
  w(attrs.size()) = conf_w(0);
  w(attrs.size() + 1) = conf_w(1);
  return w;
}

}  // namespace

EnhancedDataset build_enhanced_cv(const Corpus& train, const StackingConfig& config,
                                  const MemberPair* members) {
  return build_impl(train, config, members).data;
}

PresidentBundle train_cv_president(const Corpus& train, const StackingConfig& config,
                                   const MemberPair* members) {
  BuiltEnhanced b = build_impl(train, config, members);
  const Eigen::Vector2d conf_w =
      confidence_weights(b.inner.nb_conf, b.inner.knn_conf, b.data.labels, config.conf_weight);

  PresidentBundle bundle;
  bundle.president.attrs = b.attrs;
  bundle.president.conf_weights = conf_w;
  bundle.president.model =
      make_memory_model(std::move(b.data.x), std::move(b.data.labels),
                        stacked_weights(b.attrs, conf_w), config.president_k,
                        config.k_semantics, b.data.word_dims);
  // Members are retrained on the full training set for test-time use.
  bundle.nb = b.members.nb(b.idx, b.all_ids);
  bundle.knn = b.members.knn(b.idx, b.all_ids);
  bundle.lemmatizer = config.lemmatizer ? config.lemmatizer : identity_lemmatizer();
  return bundle;
}

std::vector<PresidentBundle> train_holdout_presidents(const Corpus& train,
                                                      const StackingConfig& config,
                                                      const MemberPair* members) {
  BuiltEnhanced b = build_impl(train, config, members);

  std::vector<PresidentBundle> bundles;
  for (int p = 0; p < config.inner_folds; ++p) {
    std::vector<int> rows;
    for (std::size_t i = 0; i < b.inner.part_of.size(); ++i) {
      if (b.inner.part_of[i] == p) rows.push_back(static_cast<int>(i));
    }
    const auto nrows = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd x(nrows, b.data.x.cols());
    std::vector<Category> labels;
    std::vector<Confidence> nb_conf, knn_conf;
    labels.reserve(rows.size());
    for (Eigen::Index i = 0; i < nrows; ++i) {
      const std::size_t r = static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]);
      x.row(i) = b.data.x.row(static_cast<Eigen::Index>(r));
      labels.push_back(b.data.labels[r]);
      nb_conf.push_back(b.inner.nb_conf[r]);
      knn_conf.push_back(b.inner.knn_conf[r]);
    }
    const Eigen::Vector2d conf_w =
        confidence_weights(nb_conf, knn_conf, labels, config.conf_weight);

    PresidentBundle bundle;
    bundle.president.attrs = b.attrs;
    bundle.president.conf_weights = conf_w;
    bundle.president.model =
        make_memory_model(std::move(x), std::move(labels), stacked_weights(b.attrs, conf_w),
                          config.president_k, config.k_semantics, b.data.word_dims);
    // Paired with exactly the members that scored this part; not retrained.
    bundle.nb = std::move(b.inner.part_nb[static_cast<std::size_t>(p)]);
    bundle.knn = std::move(b.inner.part_knn[static_cast<std::size_t>(p)]);
    bundle.lemmatizer = config.lemmatizer ? config.lemmatizer : identity_lemmatizer();
    bundles.push_back(std::move(bundle));
  }
  return bundles;
}

EnhancedVector enhance_message(const PresidentBundle& bundle, const Message& message) {
  EnhancedVector v;
  v.words = vectorize(message, bundle.president.attrs, bundle.lemmatizer).values;
  v.member_confidences =
      Eigen::Vector2d(bundle.nb->score_message(message).w_spam,
                      bundle.knn->score_message(message).w_spam);
  v.label = message.label;
  return v;
}

PresidentDecision president_classify(const PresidentBundle& bundle, const Message& message,
                                     double lambda) {
  const EnhancedVector ev = enhance_message(bundle, message);
  Eigen::VectorXd query(ev.words.size() + 2);
  query.head(ev.words.size()) = ev.words;
  query.tail(2) = ev.member_confidences;
  PresidentDecision decision;
  decision.confidence = knn_confidence(bundle.president.model, query);
  decision.verdict = classify(decision.confidence, lambda);
  return decision;
}

}  // namespace spamstack
