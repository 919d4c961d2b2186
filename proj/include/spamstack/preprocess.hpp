#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spamstack/corpus.hpp"

namespace spamstack {

// Lowercased maximal runs of ASCII letters; everything else separates.
std::vector<std::string> tokenize(std::string_view text);

// Hooks must be pure and deterministic. The default is identity, which
// suits the pre-lemmatized corpus variants.
using Lemmatizer = std::function<std::string(const std::string&)>;
const Lemmatizer& identity_lemmatizer();
std::string lemmatize(const std::string& token, const Lemmatizer& lemmatizer);

struct Vocabulary {
  std::map<std::string, int> entries;  // lemma -> document frequency
  int total_train_messages = 0;
};

// Presence-based document frequencies; lemmas under min_doc_freq dropped.
Vocabulary build_vocabulary(const Corpus& train, int min_doc_freq = 4,
                            const Lemmatizer& lemmatizer = identity_lemmatizer());

// Message counts for one binary attribute against the two categories.
struct AttrClassCounts {
  long x1_spam = 0;
  long x1_legit = 0;
  long x0_spam = 0;
  long x0_legit = 0;

  long total() const { return x1_spam + x1_legit + x0_spam + x0_legit; }
};

// Mutual information between attribute and category in bits; zero-count
// terms contribute 0. Throws std::invalid_argument when the table is empty.
double information_gain(const AttrClassCounts& counts);

// Same quantity for an arbitrary discrete value set: one {legit, spam}
// count pair per value.
double mutual_information_bits(std::span<const std::array<long, 2>> value_counts);

struct AttributeSet {
  struct Attribute {
    std::string lemma;
    double ig = 0.0;
  };
  std::vector<Attribute> attributes;  // ig descending, lemma ascending on ties

  int size() const { return static_cast<int>(attributes.size()); }
  Eigen::VectorXd weights() const;
};

// Top m vocabulary lemmas by IG against the training labels; capped at the
// vocabulary size. Throws std::invalid_argument on an empty vocabulary.
AttributeSet select_attributes(const Vocabulary& vocab, const Corpus& train, int m,
                               const Lemmatizer& lemmatizer = identity_lemmatizer());

struct FeatureVector {
  Eigen::VectorXd values;  // binary indicators
  std::optional<Category> label;
};

FeatureVector vectorize(const Message& message, const AttributeSet& attrs,
                        const Lemmatizer& lemmatizer = identity_lemmatizer());

// Lines "rank<TAB>lemma<TAB>ig" with ig at 6 decimal places, rank from 1.
std::string attribute_dump(const AttributeSet& attrs);

// ---- indexed pipeline ----
// Tokenizes a corpus once so fold experiments can recompute vocabularies,
// rankings and matrices from integer ids instead of strings.

struct IndexedCorpus {
  const Corpus* corpus = nullptr;
  std::vector<std::string> lexicon;               // id -> lemma, every lemma seen
  std::unordered_map<std::string, int> lemma_id;  // lemma -> id
  std::vector<std::vector<int>> msg_lemmas;       // per message, sorted distinct ids
};

IndexedCorpus index_corpus(const Corpus& corpus,
                           const Lemmatizer& lemmatizer = identity_lemmatizer());

// IG ranking of the pruned vocabulary of a message subset, ordered by
// (ig descending, lemma ascending).
struct RankedAttributes {
  std::vector<int> lemma_ids;
  std::vector<double> ig;

  int size() const { return static_cast<int>(lemma_ids.size()); }
};

RankedAttributes rank_attributes(const IndexedCorpus& idx, std::span<const int> subset,
                                 int min_doc_freq);

AttributeSet attribute_prefix(const IndexedCorpus& idx, const RankedAttributes& ranked, int m);

// Rows follow `subset` order, columns follow `attr_lemma_ids`; entries 0/1.
Eigen::MatrixXd binary_matrix(const IndexedCorpus& idx, std::span<const int> subset,
                              std::span<const int> attr_lemma_ids);

}  // namespace spamstack
