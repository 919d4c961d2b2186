#include "spamstack/members.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace spamstack {

Category classify(const Confidence& conf, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return conf.w_spam > lambda * conf.w_legit ? Category::spam : Category::legitimate;
}

NaiveBayesModel nb_train(const Eigen::Ref<const Eigen::MatrixXd>& x,
                         const std::vector<Category>& labels, double smoothing) {
  if (x.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument("labels do not align with instances");
  }
  if (!(smoothing > 0.0)) throw std::invalid_argument("smoothing must be positive");

  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  Eigen::Vector2d count = Eigen::Vector2d::Zero();
  Eigen::MatrixX2d ones = Eigen::MatrixX2d::Zero(m, 2);
  for (Eigen::Index r = 0; r < n; ++r) {
    const int c = labels[static_cast<std::size_t>(r)] == Category::spam ? 1 : 0;
    count(c) += 1.0;
    ones.col(c) += x.row(r).transpose();
  }
  if (count(0) == 0.0 || count(1) == 0.0) {
    throw std::invalid_argument("training set lacks a category");
  }

  NaiveBayesModel model;
  model.smoothing = smoothing;
  model.prior = count / static_cast<double>(n);
  model.cond.resize(m, 2);
  for (int c = 0; c < 2; ++c) {
    model.cond.col(c) =
        ((ones.col(c).array() + smoothing) / (count(c) + 2.0 * smoothing)).matrix();
  }
  return model;
}

std::vector<Confidence> nb_confidences(const NaiveBayesModel& model,
                                       const Eigen::Ref<const Eigen::MatrixXd>& x) {
  if (x.cols() != model.cond.rows()) throw std::invalid_argument("attribute count mismatch");

  // Log posterior per category: x * (log p1 - log p0) + sum(log p0) + log prior.
  const Eigen::ArrayX2d log1 = model.cond.array().log();
  const Eigen::ArrayX2d log0 = (1.0 - model.cond.array()).log();
  Eigen::MatrixXd score(x.rows(), 2);
  for (int c = 0; c < 2; ++c) {
    score.col(c) = x * (log1.col(c) - log0.col(c)).matrix();
    score.col(c).array() += log0.col(c).sum() + std::log(model.prior(c));
  }

  std::vector<Confidence> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    // 1 / (1 + exp(legit - spam)) saturates cleanly at the extremes.
    out[static_cast<std::size_t>(r)] =
        make_confidence(1.0 / (1.0 + std::exp(score(r, 0) - score(r, 1))));
  }
  return out;
}

Confidence nb_confidence(const NaiveBayesModel& model,
                         const Eigen::Ref<const Eigen::VectorXd>& x) {
  return nb_confidences(model, x.transpose())[0];
}

double distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const Eigen::Ref<const Eigen::VectorXd>& weights) {
  if (a.size() != b.size() || a.size() != weights.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  return (a - b).cwiseAbs().dot(weights);
}

MemoryBasedModel make_memory_model(Eigen::MatrixXd instances, std::vector<Category> labels,
                                   Eigen::VectorXd weights, int k, KSemantics semantics,
                                   int binary_dims) {
  if (instances.rows() != static_cast<Eigen::Index>(labels.size())) {
    throw std::invalid_argument("labels do not align with instances");
  }
  if (instances.cols() != weights.size()) {
    throw std::invalid_argument("weights do not align with attributes");
  }
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if ((weights.array() < 0.0).any()) throw std::invalid_argument("negative attribute weight");
  if (binary_dims < 0) binary_dims = static_cast<int>(instances.cols());
  if (binary_dims > instances.cols()) throw std::invalid_argument("binary_dims out of range");

  MemoryBasedModel model;
  model.instances = std::move(instances);
  model.labels = std::move(labels);
  model.weights = std::move(weights);
  model.k = k;
  model.semantics = semantics;
  model.binary_dims = binary_dims;
  return model;
}

Eigen::MatrixXd pairwise_distances(const MemoryBasedModel& model,
                                   const Eigen::Ref<const Eigen::MatrixXd>& queries) {
  if (queries.cols() != model.instances.cols()) {
    throw std::invalid_argument("query dimension mismatch");
  }
  const Eigen::Index q = queries.rows();
  const Eigen::Index n = model.instances.rows();
  const Eigen::Index nb = model.binary_dims;
  const Eigen::Index d = model.instances.cols();

  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(q, n);
  if (nb > 0) {
    // For 0/1 columns, delta = q(1-x) + (1-q)x; both products below have
    // only nonnegative summands, so identical vectors yield exactly 0.
    const auto w = model.weights.head(nb).transpose().array();
    const Eigen::MatrixXd xw = (model.instances.leftCols(nb).array().rowwise() * w).matrix();
    const Eigen::MatrixXd xcw =
        ((1.0 - model.instances.leftCols(nb).array()).rowwise() * w).matrix();
    dist.noalias() = queries.leftCols(nb) * xcw.transpose();
    dist.noalias() += (1.0 - queries.leftCols(nb).array()).matrix() * xw.transpose();
  }
  for (Eigen::Index t = nb; t < d; ++t) {
    const double w = model.weights(t);
    if (w == 0.0) continue;
    for (Eigen::Index r = 0; r < q; ++r) {
      dist.row(r).array() +=
          w * (model.instances.col(t).array() - queries(r, t)).abs().transpose();
    }
  }
  return dist;
}

Eigen::VectorXd distances_to(const MemoryBasedModel& model,
                             const Eigen::Ref<const Eigen::VectorXd>& query) {
  return pairwise_distances(model, query.transpose()).row(0).transpose();
}

namespace {

std::vector<std::pair<double, int>> sorted_with_index(
    const Eigen::Ref<const Eigen::VectorXd>& distances) {
  std::vector<std::pair<double, int>> order(static_cast<std::size_t>(distances.size()));
  for (Eigen::Index i = 0; i < distances.size(); ++i) {
    order[static_cast<std::size_t>(i)] = {distances(i), static_cast<int>(i)};
  }
  std::sort(order.begin(), order.end());
  return order;
}

// Number of leading entries covered by the neighborhood.
std::size_t neighborhood_end(const std::vector<std::pair<double, int>>& order, int k,
                             KSemantics semantics) {
  if (semantics == KSemantics::instances) {
    return std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
  }
  std::size_t end = 0;
  int bands = 0;
  while (end < order.size()) {
    if (end == 0 || order[end].first != order[end - 1].first) {
      if (++bands > k) break;
    }
    ++end;
  }
  return end;
}

Confidence vote(const std::vector<std::pair<double, int>>& order,
                const std::vector<Category>& labels, int k, KSemantics semantics) {
  if (order.empty()) throw std::invalid_argument("empty memory-based model");
  if (k < 1) throw std::invalid_argument("k must be at least 1");

  const std::size_t end = neighborhood_end(order, k, semantics);

  // Zero-distance neighbors within the neighborhood dominate the
  // inverse-cube vote in the limit.
  if (order[0].first == 0.0) {
    long zeros = 0, spam = 0;
    for (std::size_t i = 0; i < end && order[i].first == 0.0; ++i) {
      ++zeros;
      if (labels[static_cast<std::size_t>(order[i].second)] == Category::spam) ++spam;
    }
    return make_confidence(static_cast<double>(spam) / static_cast<double>(zeros));
  }

  const double d_min = order[0].first;
  double total = 0.0, spam_total = 0.0;
  for (std::size_t i = 0; i < end; ++i) {
    // (d_min/d)^3 instead of 1/d^3: same ratio, no overflow for tiny d.
    const double w = std::pow(d_min / order[i].first, 3);
    total += w;
    if (labels[order[i].second] == Category::spam) spam_total += w;
  }
  return make_confidence(spam_total / total);
}

}  // namespace

std::vector<int> knn_neighborhood(const MemoryBasedModel& model,
                                  const Eigen::Ref<const Eigen::VectorXd>& query) {
  const auto order = sorted_with_index(distances_to(model, query));
  const std::size_t end = neighborhood_end(order, model.k, model.semantics);
  std::vector<int> out;
  out.reserve(end);
  for (std::size_t i = 0; i < end; ++i) out.push_back(order[i].second);
  return out;
}

Confidence knn_confidence(const MemoryBasedModel& model,
                          const Eigen::Ref<const Eigen::VectorXd>& query) {
  return vote(sorted_with_index(distances_to(model, query)), model.labels, model.k,
              model.semantics);
}

std::vector<Confidence> knn_confidences(const MemoryBasedModel& model,
                                        const Eigen::Ref<const Eigen::MatrixXd>& queries) {
  const Eigen::MatrixXd dist = pairwise_distances(model, queries);
  std::vector<Confidence> out(static_cast<std::size_t>(queries.rows()));
  for (Eigen::Index r = 0; r < queries.rows(); ++r) {
    out[static_cast<std::size_t>(r)] =
        vote(sorted_with_index(dist.row(r).transpose()), model.labels, model.k, model.semantics);
  }
  return out;
}

std::vector<Confidence> knn_votes_multi_k(const Eigen::Ref<const Eigen::VectorXd>& distances,
                                          const std::vector<Category>& labels,
                                          std::span<const int> ks, KSemantics semantics) {
  const auto order = sorted_with_index(distances);
  std::vector<Confidence> out;
  out.reserve(ks.size());
  for (int k : ks) out.push_back(vote(order, labels, k, semantics));
  return out;
}

// ---- trainable members ----

namespace {

const Lemmatizer& lemmatizer_or_identity(const Lemmatizer& lemmatizer) {
  return lemmatizer ? lemmatizer : identity_lemmatizer();
}

std::vector<Category> subset_labels(const IndexedCorpus& idx, std::span<const int> ids) {
  std::vector<Category> labels;
  labels.reserve(ids.size());
  for (int i : ids) labels.push_back(idx.corpus->at(i).label);
  return labels;
}

// Attribute ids for a member: a fresh ranking of the training subset unless
// a fixed (corpus-global) ranking was supplied.
std::pair<std::vector<int>, AttributeSet> member_attributes(const IndexedCorpus& idx,
                                                            std::span<const int> train_ids,
                                                            int m,
                                                            const MemberTrainingOptions& opts) {
  RankedAttributes local;
  const RankedAttributes* ranking = opts.fixed_ranking.get();
  if (!ranking) {
    local = rank_attributes(idx, train_ids, opts.min_doc_freq);
    ranking = &local;
  }
  if (ranking->size() == 0) throw std::runtime_error("no attributes survive pruning");
  const int take = std::min(m, ranking->size());
  std::vector<int> ids(ranking->lemma_ids.begin(), ranking->lemma_ids.begin() + take);
  return {std::move(ids), attribute_prefix(idx, *ranking, take)};
}

class NbMember final : public MemberModel {
 public:
  NbMember(NaiveBayesModel model, AttributeSet attrs, std::vector<int> attr_ids,
           Lemmatizer lemmatizer, int train_n)
      : model_(std::move(model)),
        attrs_(std::move(attrs)),
        attr_ids_(std::move(attr_ids)),
        lemmatizer_(std::move(lemmatizer)),
        train_n_(train_n) {}

  std::vector<Confidence> score(const IndexedCorpus& idx, std::span<const int> ids) const override {
    return nb_confidences(model_, binary_matrix(idx, ids, attr_ids_));
  }

  Confidence score_message(const Message& message) const override {
    return nb_confidence(model_, vectorize(message, attrs_, lemmatizer_).values);
  }

  int training_size() const override { return train_n_; }

 private:
  NaiveBayesModel model_;
  AttributeSet attrs_;
  std::vector<int> attr_ids_;
  Lemmatizer lemmatizer_;
  int train_n_;
};

class KnnMember final : public MemberModel {
 public:
  KnnMember(MemoryBasedModel model, AttributeSet attrs, std::vector<int> attr_ids,
            Lemmatizer lemmatizer)
      : model_(std::move(model)),
        attrs_(std::move(attrs)),
        attr_ids_(std::move(attr_ids)),
        lemmatizer_(std::move(lemmatizer)) {}

  std::vector<Confidence> score(const IndexedCorpus& idx, std::span<const int> ids) const override {
    return knn_confidences(model_, binary_matrix(idx, ids, attr_ids_));
  }

  Confidence score_message(const Message& message) const override {
    return knn_confidence(model_, vectorize(message, attrs_, lemmatizer_).values);
  }

  int training_size() const override { return model_.size(); }

 private:
  MemoryBasedModel model_;
  AttributeSet attrs_;
  std::vector<int> attr_ids_;
  Lemmatizer lemmatizer_;
};

}  // namespace

MemberTrainer make_nb_trainer(const NbParams& params, const MemberTrainingOptions& opts) {
  return [params, opts](const IndexedCorpus& idx,
                        std::span<const int> train_ids) -> std::unique_ptr<MemberModel> {
    auto [attr_ids, attrs] = member_attributes(idx, train_ids, params.m, opts);
    const Eigen::MatrixXd x = binary_matrix(idx, train_ids, attr_ids);
    NaiveBayesModel model = nb_train(x, subset_labels(idx, train_ids), params.smoothing);
    return std::make_unique<NbMember>(std::move(model), std::move(attrs), std::move(attr_ids),
                                      lemmatizer_or_identity(opts.lemmatizer),
                                      static_cast<int>(train_ids.size()));
  };
}

MemberTrainer make_knn_trainer(const KnnParams& params, KSemantics semantics,
                               const MemberTrainingOptions& opts) {
  return [params, semantics, opts](const IndexedCorpus& idx,
                                   std::span<const int> train_ids) -> std::unique_ptr<MemberModel> {
    auto [attr_ids, attrs] = member_attributes(idx, train_ids, params.m, opts);
    MemoryBasedModel model =
        make_memory_model(binary_matrix(idx, train_ids, attr_ids), subset_labels(idx, train_ids),
                          attrs.weights(), params.k, semantics);
    return std::make_unique<KnnMember>(std::move(model), std::move(attrs), std::move(attr_ids),
                                       lemmatizer_or_identity(opts.lemmatizer));
  };
}

}  // namespace spamstack
