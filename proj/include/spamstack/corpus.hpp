#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spamstack {

enum class Category : std::uint8_t { legitimate = 0, spam = 1 };

const char* to_string(Category c);

struct Message {
  std::string id;    // unique within a corpus
  std::string text;  // subject and body, newline-separated
  Category label = Category::legitimate;
};

// Ordered, immutable message collection. Safe to share read-only across
// threads once constructed.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Message> messages);
  // Variant that records the source part directory of each message.
  Corpus(std::vector<Message> messages, std::vector<std::string> part_names,
         std::vector<int> part_of);

  const std::vector<Message>& messages() const { return messages_; }
  const Message& at(int i) const { return messages_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(messages_.size()); }
  long n_legit() const { return n_legit_; }
  long n_spam() const { return n_spam_; }
  std::vector<Category> labels() const;

  bool has_parts() const { return !part_names_.empty(); }
  const std::vector<std::string>& part_names() const { return part_names_; }
  int part_of(int i) const { return part_of_.at(static_cast<std::size_t>(i)); }

 private:
  void validate() const;

  std::vector<Message> messages_;
  std::vector<std::string> part_names_;
  std::vector<int> part_of_;  // aligned with messages_ when has_parts()
  long n_legit_ = 0;
  long n_spam_ = 0;
};

struct LoadOptions {
  // When off, a leading "Subject:" line is stripped from each message.
  bool include_subject = true;
};

// Loads a directory tree of plain-text files, one message per file: files
// directly under `root` plus one level of part subdirectories, in
// lexicographic (directory, filename) order. A file is spam iff its name
// contains "spmsg". Bytes that are not valid UTF-8 are replaced with '?'.
// Throws std::runtime_error on unreadable paths or an empty corpus.
Corpus load_lingspam(const std::filesystem::path& root, const LoadOptions& options = {});

struct FoldPlan {
  int n_folds = 0;
  std::uint64_t seed = 0;
  std::unordered_map<std::string, int> assignment;  // message id -> fold

  int fold_of(const std::string& id) const;
};

// Per-position fold assignment for a labeled sequence: each category is
// shuffled with the seeded generator, then all positions are dealt
// round-robin (legitimate first, one running counter across categories),
// so both total fold sizes and per-fold category counts differ by at most 1.
std::vector<int> stratified_assignment(const std::vector<Category>& labels, int n_folds,
                                       std::uint64_t seed);

// Throws std::invalid_argument if n_folds < 2 or either category has fewer
// than n_folds messages.
FoldPlan stratified_folds(const Corpus& corpus, int n_folds, std::uint64_t seed);

// Uses the corpus part directories as folds verbatim (no shuffling).
FoldPlan folds_from_parts(const Corpus& corpus);

// (train, test): test holds fold j, train everything else.
std::pair<Corpus, Corpus> split(const Corpus& corpus, const FoldPlan& plan, int j);

namespace detail {
// Unbiased draw from [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined, which would break cross-platform determinism.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n);
}  // namespace detail

}  // namespace spamstack
