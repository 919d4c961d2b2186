#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "spamstack/corpus.hpp"
#include "spamstack/preprocess.hpp"

namespace spamstack {

struct Confidence {
  double w_spam = 0.5;
  double w_legit = 0.5;  // always 1 - w_spam
};

inline Confidence make_confidence(double w_spam) { return {w_spam, 1.0 - w_spam}; }

// Spam iff w_spam > lambda * w_legit; equality stays legitimate (the
// criterion is strict), and w_legit = 0 resolves to spam.
// Throws std::invalid_argument when lambda <= 0.
Category classify(const Confidence& conf, double lambda);

struct NaiveBayesModel {
  Eigen::Vector2d prior;   // [legitimate, spam]
  Eigen::MatrixX2d cond;   // P(x_i = 1 | c), columns [legitimate, spam]
  double smoothing = 1.0;

  int attribute_count() const { return static_cast<int>(cond.rows()); }
};

// Rows of x are 0/1 instances aligned with labels.
// prior(c) = count(c)/N; cond(i,c) = (count(x_i=1 and c) + s) / (count(c) + 2s).
// Throws std::invalid_argument when a category is absent.
NaiveBayesModel nb_train(const Eigen::Ref<const Eigen::MatrixXd>& x,
                         const std::vector<Category>& labels, double smoothing = 1.0);

// Log-space posterior, normalized over the two categories.
Confidence nb_confidence(const NaiveBayesModel& model,
                         const Eigen::Ref<const Eigen::VectorXd>& x);
std::vector<Confidence> nb_confidences(const NaiveBayesModel& model,
                                       const Eigen::Ref<const Eigen::MatrixXd>& x);

// Sum_t weights_t * delta(a_t, b_t), delta = |a_t - b_t|: the inequality
// indicator on binary attributes, absolute difference on [0,1] ones.
double distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const Eigen::Ref<const Eigen::VectorXd>& weights);

// k counts nearest distinct distance values (all ties included) or nearest
// individual instances.
enum class KSemantics { distance_bands, instances };

struct MemoryBasedModel {
  Eigen::MatrixXd instances;     // n x d
  std::vector<Category> labels;  // n
  Eigen::VectorXd weights;       // d, nonnegative
  int k = 1;
  KSemantics semantics = KSemantics::distance_bands;
  int binary_dims = 0;  // leading 0/1 columns; the rest take values in [0,1]

  int size() const { return static_cast<int>(instances.rows()); }
  int dims() const { return static_cast<int>(instances.cols()); }
};

// binary_dims = -1 marks every column binary. Validates shapes.
MemoryBasedModel make_memory_model(Eigen::MatrixXd instances, std::vector<Category> labels,
                                   Eigen::VectorXd weights, int k,
                                   KSemantics semantics = KSemantics::distance_bands,
                                   int binary_dims = -1);

// queries x n matrix of weighted distances. Binary columns go through two
// matrix products whose summands are all nonnegative, so identical vectors
// come out at exactly 0 and nothing can go negative by cancellation.
Eigen::MatrixXd pairwise_distances(const MemoryBasedModel& model,
                                   const Eigen::Ref<const Eigen::MatrixXd>& queries);

Eigen::VectorXd distances_to(const MemoryBasedModel& model,
                             const Eigen::Ref<const Eigen::VectorXd>& query);

// Stored-instance indices of the query's neighborhood, ordered by
// (distance, index).
std::vector<int> knn_neighborhood(const MemoryBasedModel& model,
                                  const Eigen::Ref<const Eigen::VectorXd>& query);

// Inverse-cube vote: w_spam = sum_spam 1/d^3 over the neighborhood divided
// by the same sum over all neighbors. Any zero-distance neighbors take over
// the vote (w_spam = spam fraction among them, the d->0 limit). Throws
// std::invalid_argument on an empty model.
Confidence knn_confidence(const MemoryBasedModel& model,
                          const Eigen::Ref<const Eigen::VectorXd>& query);
std::vector<Confidence> knn_confidences(const MemoryBasedModel& model,
                                        const Eigen::Ref<const Eigen::MatrixXd>& queries);

// One vote per requested k from a single distance vector.
std::vector<Confidence> knn_votes_multi_k(const Eigen::Ref<const Eigen::VectorXd>& distances,
                                          const std::vector<Category>& labels,
                                          std::span<const int> ks, KSemantics semantics);

// ---- trainable member interface ----

class MemberModel {
 public:
  virtual ~MemberModel() = default;
  // Scores messages (corpus positions) of the indexed corpus the member was
  // trained from.
  virtual std::vector<Confidence> score(const IndexedCorpus& idx,
                                        std::span<const int> ids) const = 0;
  virtual Confidence score_message(const Message& message) const = 0;
  virtual int training_size() const = 0;
};

using MemberTrainer = std::function<std::unique_ptr<MemberModel>(const IndexedCorpus&,
                                                                 std::span<const int>)>;

struct NbParams {
  int m = 100;
  double smoothing = 1.0;
};

struct KnnParams {
  int k = 8;
  int m = 600;
};

struct MemberTrainingOptions {
  int min_doc_freq = 4;
  // When set, attributes are this ranking's prefix instead of a fresh
  // ranking on the training subset (corpus-global selection).
  std::shared_ptr<const RankedAttributes> fixed_ranking;
  Lemmatizer lemmatizer;  // empty -> identity; used for message-level scoring
};

MemberTrainer make_nb_trainer(const NbParams& params, const MemberTrainingOptions& opts = {});
MemberTrainer make_knn_trainer(const KnnParams& params,
                               KSemantics semantics = KSemantics::distance_bands,
                               const MemberTrainingOptions& opts = {});

}  // namespace spamstack
