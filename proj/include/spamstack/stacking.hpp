#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spamstack/corpus.hpp"
#include "spamstack/members.hpp"
#include "spamstack/preprocess.hpp"

namespace spamstack {

enum class StackingVariant { cross_validation, holdout };
enum class ConfWeight { ig_binned, unit };

const char* to_string(StackingVariant v);

struct StackingConfig {
  StackingVariant variant = StackingVariant::cross_validation;
  int inner_folds = 3;
  int president_k = 1;
  int president_m = 100;
  NbParams nb;
  KnnParams knn;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  KSemantics k_semantics = KSemantics::distance_bands;
  ConfWeight conf_weight = ConfWeight::ig_binned;
  int min_doc_freq = 4;
  Lemmatizer lemmatizer;  // empty -> identity
};

struct EnhancedVector {
  Eigen::VectorXd words;                 // binary, president attribute order
  Eigen::Vector2d member_confidences;    // spam confidences (NB, k-NN)
  std::optional<Category> label;
};

struct EnhancedDataset {
  Eigen::MatrixXd x;  // n x (m + 2): word block, then the two confidences
  std::vector<Category> labels;
  std::vector<std::string> ids;
  std::vector<int> scored_by_part;  // inner part whose members scored each row
  int word_dims = 0;

  int size() const { return static_cast<int>(x.rows()); }
  EnhancedVector row(int i) const;
};

// Overrides for the two member trainers; tests inject degenerate members.
struct MemberPair {
  MemberTrainer nb;
  MemberTrainer knn;
};

MemberPair default_members(const StackingConfig& config);

// Inner-CV member outputs over a training subset: every position of
// train_ids is scored by members trained on the other inner parts.
struct InnerScores {
  std::vector<int> part_of;  // per train_ids position
  std::vector<Confidence> nb_conf;
  std::vector<Confidence> knn_conf;
  std::vector<std::unique_ptr<MemberModel>> part_nb;   // per part, trained on its complement
  std::vector<std::unique_ptr<MemberModel>> part_knn;
};

InnerScores compute_inner_scores(const IndexedCorpus& idx, std::span<const int> train_ids,
                                 int inner_folds, std::uint64_t seed, const MemberPair& members);

// Distance weights for the two confidence columns: IG of the confidence
// discretized into 10 equal-width bins over [0,1] against the labels.
Eigen::Vector2d confidence_weights(std::span<const Confidence> nb,
                                   std::span<const Confidence> knn,
                                   std::span<const Category> labels, ConfWeight mode);

// Stratified inner CV over `train`: members trained on each part's
// complement score that part; word attributes come from a ranking of the
// full `train`. Covers every training message exactly once.
// Throws std::runtime_error when an inner part lacks a category.
EnhancedDataset build_enhanced_cv(const Corpus& train, const StackingConfig& config,
                                  const MemberPair* members = nullptr);

struct TrainedPresident {
  AttributeSet attrs;        // president word attributes
  MemoryBasedModel model;    // memory over enhanced vectors
  Eigen::Vector2d conf_weights;
};

// A president plus the exact members to pair with it at test time.
struct PresidentBundle {
  TrainedPresident president;
  std::unique_ptr<MemberModel> nb;
  std::unique_ptr<MemberModel> knn;
  Lemmatizer lemmatizer;
};

// President memory = build_enhanced_cv output; members retrained on the
// full training set.
PresidentBundle train_cv_president(const Corpus& train, const StackingConfig& config,
                                   const MemberPair* members = nullptr);

// One president per inner part, trained on that part's enhanced vectors
// alone and paired with the members that scored it (never retrained).
std::vector<PresidentBundle> train_holdout_presidents(const Corpus& train,
                                                      const StackingConfig& config,
                                                      const MemberPair* members = nullptr);

EnhancedVector enhance_message(const PresidentBundle& bundle, const Message& message);

struct PresidentDecision {
  Category verdict = Category::legitimate;
  Confidence confidence;
};

PresidentDecision president_classify(const PresidentBundle& bundle, const Message& message,
                                     double lambda);

}  // namespace spamstack
