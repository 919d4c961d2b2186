#include "spamstack/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace spamstack {

namespace fs = std::filesystem;

const char* to_string(Category c) {
  return c == Category::spam ? "spam" : "legitimate";
}

Corpus::Corpus(std::vector<Message> messages) : messages_(std::move(messages)) {
  validate();
  for (const Message& m : messages_) {
    (m.label == Category::spam ? n_spam_ : n_legit_)++;
  }
}

Corpus::Corpus(std::vector<Message> messages, std::vector<std::string> part_names,
               std::vector<int> part_of)
    : Corpus(std::move(messages)) {
  part_names_ = std::move(part_names);
  part_of_ = std::move(part_of);
  if (part_of_.size() != messages_.size()) {
    throw std::invalid_argument("part assignment does not cover the corpus");
  }
  for (int p : part_of_) {
    if (p < 0 || p >= static_cast<int>(part_names_.size())) {
      throw std::invalid_argument("part index out of range");
    }
  }
}

void Corpus::validate() const {
  std::unordered_set<std::string_view> seen;
  seen.reserve(messages_.size());
  for (const Message& m : messages_) {
    if (!seen.insert(m.id).second) {
      throw std::invalid_argument("duplicate message id: " + m.id);
    }
  }
}

std::vector<Category> Corpus::labels() const {
  std::vector<Category> out;
  out.reserve(messages_.size());
  for (const Message& m : messages_) out.push_back(m.label);
  return out;
}

namespace {

// Replaces bytes that do not form valid UTF-8 sequences with '?', one
// replacement per offending byte (tolerates Latin-1 input).
std::string scrub_utf8(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
  std::size_t n = raw.size();
  std::size_t i = 0;
  while (i < n) {
    unsigned char b = p[i];
    std::size_t extra;
    if (b < 0x80) {
      out.push_back(static_cast<char>(b));
      ++i;
      continue;
    } else if (b >= 0xC2 && b <= 0xDF) {
      extra = 1;
    } else if (b >= 0xE0 && b <= 0xEF) {
      extra = 2;
    } else if (b >= 0xF0 && b <= 0xF4) {
      extra = 3;
    } else {
      out.push_back('?');
      ++i;
      continue;
    }
    bool ok = i + extra < n;
    for (std::size_t j = 1; ok && j <= extra; ++j) {
      ok = (p[i + j] & 0xC0) == 0x80;
    }
    if (ok) {
      out.append(raw, i, extra + 1);
      i += extra + 1;
    } else {
      out.push_back('?');
      ++i;
    }
  }
  return out;
}

std::string read_message_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read message file: " + path.string());
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return scrub_utf8(raw);
}

void strip_subject_line(std::string& text) {
  if (text.rfind("Subject:", 0) != 0) return;
  std::size_t eol = text.find('\n');
  text = (eol == std::string::npos) ? std::string() : text.substr(eol + 1);
}

}  // namespace

Corpus load_lingspam(const fs::path& root, const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec) || ec) {
    throw std::runtime_error("corpus path is not a readable directory: " + root.string());
  }

  std::vector<std::string> subdirs;
  bool root_has_files = false;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      subdirs.push_back(entry.path().filename().string());
    } else if (entry.is_regular_file()) {
      root_has_files = true;
    }
  }
  std::sort(subdirs.begin(), subdirs.end());

  std::vector<Message> messages;
  std::vector<std::string> part_names;
  std::vector<int> part_of;

  auto load_part = [&](const fs::path& dir, const std::string& part) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path().filename().string());
    }
    if (files.empty()) return;
    std::sort(files.begin(), files.end());
    const int part_index = static_cast<int>(part_names.size());
    part_names.push_back(part);
    for (const std::string& f : files) {
      Message m;
      m.id = part.empty() ? f : part + "/" + f;
      m.text = read_message_file(dir / f);
      if (!options.include_subject) strip_subject_line(m.text);
      m.label = f.find("spmsg") != std::string::npos ? Category::spam : Category::legitimate;
      messages.push_back(std::move(m));
      part_of.push_back(part_index);
    }
  };

  if (root_has_files) load_part(root, "");
  for (const std::string& d : subdirs) load_part(root / d, d);

  if (messages.empty()) {
    throw std::runtime_error("empty corpus: no message files under " + root.string());
  }
  return Corpus(std::move(messages), std::move(part_names), std::move(part_of));
}

int FoldPlan::fold_of(const std::string& id) const {
  auto it = assignment.find(id);
  if (it == assignment.end()) throw std::out_of_range("message id not in fold plan: " + id);
  return it->second;
}

namespace detail {

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
  // Rejects the partial cycle at the top of the range, so every value in
  // [0, n) is equally likely regardless of platform.
  const std::uint64_t threshold = (0ULL - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace detail

namespace {

void shuffle_positions(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[detail::bounded_rand(rng, i)]);
  }
}

}  // namespace

std::vector<int> stratified_assignment(const std::vector<Category>& labels, int n_folds,
                                       std::uint64_t seed) {
  if (n_folds < 2) throw std::invalid_argument("need at least 2 folds");
  std::vector<int> legit;
  std::vector<int> spam;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    (labels[static_cast<std::size_t>(i)] == Category::spam ? spam : legit).push_back(i);
  }
  if (static_cast<int>(legit.size()) < n_folds || static_cast<int>(spam.size()) < n_folds) {
    throw std::invalid_argument("stratification needs at least n_folds messages per category");
  }

  std::mt19937_64 rng(seed);
  shuffle_positions(legit, rng);
  shuffle_positions(spam, rng);

  // One running counter across both deals keeps total fold sizes within 1
  // of each other as well as the per-fold category counts.
  std::vector<int> fold(labels.size(), 0);
  long counter = 0;
  for (int i : legit) fold[static_cast<std::size_t>(i)] = static_cast<int>(counter++ % n_folds);
  for (int i : spam) fold[static_cast<std::size_t>(i)] = static_cast<int>(counter++ % n_folds);
  return fold;
}

FoldPlan stratified_folds(const Corpus& corpus, int n_folds, std::uint64_t seed) {
  const std::vector<int> fold = stratified_assignment(corpus.labels(), n_folds, seed);
  FoldPlan plan;
  plan.n_folds = n_folds;
  plan.seed = seed;
  plan.assignment.reserve(fold.size());
  for (int i = 0; i < corpus.size(); ++i) {
    plan.assignment.emplace(corpus.at(i).id, fold[static_cast<std::size_t>(i)]);
  }
  return plan;
}

FoldPlan folds_from_parts(const Corpus& corpus) {
  if (!corpus.has_parts() || corpus.part_names().size() < 2) {
    throw std::invalid_argument("corpus has no part directories to use as folds");
  }
  FoldPlan plan;
  plan.n_folds = static_cast<int>(corpus.part_names().size());
  plan.seed = 0;
  plan.assignment.reserve(static_cast<std::size_t>(corpus.size()));
  for (int i = 0; i < corpus.size(); ++i) {
    plan.assignment.emplace(corpus.at(i).id, corpus.part_of(i));
  }
  return plan;
}

std::pair<Corpus, Corpus> split(const Corpus& corpus, const FoldPlan& plan, int j) {
  if (j < 0 || j >= plan.n_folds) throw std::out_of_range("fold index out of range");
  std::vector<Message> train;
  std::vector<Message> test;
  for (const Message& m : corpus.messages()) {
    (plan.fold_of(m.id) == j ? test : train).push_back(m);
  }
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

}  // namespace spamstack
