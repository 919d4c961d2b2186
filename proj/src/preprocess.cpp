#include "spamstack/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace spamstack {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const bool upper = ch >= 'A' && ch <= 'Z';
    if (upper || (ch >= 'a' && ch <= 'z')) {
      current.push_back(upper ? static_cast<char>(ch - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

const Lemmatizer& identity_lemmatizer() {
  static const Lemmatizer identity = [](const std::string& token) { return token; };
  return identity;
}

std::string lemmatize(const std::string& token, const Lemmatizer& lemmatizer) {
  return lemmatizer ? lemmatizer(token) : token;
}

namespace {

// Distinct lemmas of one message.
std::unordered_set<std::string> lemma_set(const Message& m, const Lemmatizer& lemmatizer) {
  std::unordered_set<std::string> out;
  for (std::string& tok : tokenize(m.text)) {
    out.insert(lemmatizer ? lemmatizer(tok) : std::move(tok));
  }
  return out;
}

}  // namespace

Vocabulary build_vocabulary(const Corpus& train, int min_doc_freq, const Lemmatizer& lemmatizer) {
  if (train.size() == 0) throw std::invalid_argument("empty training corpus");
  if (min_doc_freq < 1) throw std::invalid_argument("min_doc_freq must be at least 1");
  std::map<std::string, int> df;
  for (const Message& m : train.messages()) {
    for (const std::string& lemma : lemma_set(m, lemmatizer)) ++df[lemma];
  }
  Vocabulary vocab;
  vocab.total_train_messages = train.size();
  for (auto& [lemma, freq] : df) {
    if (freq >= min_doc_freq) vocab.entries.emplace(lemma, freq);
  }
  return vocab;
}

double mutual_information_bits(std::span<const std::array<long, 2>> value_counts) {
  long total = 0;
  std::array<long, 2> class_total = {0, 0};
  for (const auto& row : value_counts) {
    if (row[0] < 0 || row[1] < 0) throw std::invalid_argument("negative count");
    total += row[0] + row[1];
    class_total[0] += row[0];
    class_total[1] += row[1];
  }
  if (total == 0) throw std::invalid_argument("empty counts table");

  const double n = static_cast<double>(total);
  double bits = 0.0;
  for (const auto& row : value_counts) {
    const double row_total = static_cast<double>(row[0] + row[1]);
    for (int c = 0; c < 2; ++c) {
      const double joint = static_cast<double>(row[c]);
      if (joint == 0.0) continue;  // x log x -> 0
      bits += (joint / n) * std::log2(joint * n / (row_total * static_cast<double>(class_total[c])));
    }
  }
  return std::max(bits, 0.0);  // guard against tiny negative rounding
}

double information_gain(const AttrClassCounts& counts) {
  const std::array<std::array<long, 2>, 2> rows = {{
      {counts.x0_legit, counts.x0_spam},
      {counts.x1_legit, counts.x1_spam},
  }};
  return mutual_information_bits(rows);
}

Eigen::VectorXd AttributeSet::weights() const {
  Eigen::VectorXd w(attributes.size());
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    w(static_cast<Eigen::Index>(i)) = attributes[i].ig;
  }
  return w;
}

AttributeSet select_attributes(const Vocabulary& vocab, const Corpus& train, int m,
                               const Lemmatizer& lemmatizer) {
  if (vocab.entries.empty()) throw std::invalid_argument("empty vocabulary");
  if (m < 1) throw std::invalid_argument("m must be at least 1");

  std::map<std::string, long> spam_df;
  long n_spam = 0;
  for (const Message& msg : train.messages()) {
    const bool is_spam = msg.label == Category::spam;
    if (is_spam) ++n_spam;
    if (!is_spam) continue;
    for (const std::string& lemma : lemma_set(msg, lemmatizer)) {
      if (vocab.entries.count(lemma)) ++spam_df[lemma];
    }
  }
  const long n_legit = train.size() - n_spam;

  AttributeSet set;
  set.attributes.reserve(vocab.entries.size());
  for (const auto& [lemma, freq] : vocab.entries) {
    auto it = spam_df.find(lemma);
    const long x1_spam = it == spam_df.end() ? 0 : it->second;
    const long x1_legit = freq - x1_spam;
    AttrClassCounts c;
    c.x1_spam = x1_spam;
    c.x1_legit = x1_legit;
    c.x0_spam = n_spam - x1_spam;
    c.x0_legit = n_legit - x1_legit;
    set.attributes.push_back({lemma, information_gain(c)});
  }
  std::sort(set.attributes.begin(), set.attributes.end(),
            [](const AttributeSet::Attribute& a, const AttributeSet::Attribute& b) {
              if (a.ig != b.ig) return a.ig > b.ig;
              return a.lemma < b.lemma;
            });
  if (static_cast<int>(set.attributes.size()) > m) set.attributes.resize(static_cast<std::size_t>(m));
  return set;
}

FeatureVector vectorize(const Message& message, const AttributeSet& attrs,
                        const Lemmatizer& lemmatizer) {
  const std::unordered_set<std::string> present = lemma_set(message, lemmatizer);
  FeatureVector fv;
  fv.values.resize(attrs.size());
  for (int i = 0; i < attrs.size(); ++i) {
    fv.values(i) = present.count(attrs.attributes[static_cast<std::size_t>(i)].lemma) ? 1.0 : 0.0;
  }
  fv.label = message.label;
  return fv;
}

std::string attribute_dump(const AttributeSet& attrs) {
  std::string out;
  char buf[64];
  for (int i = 0; i < attrs.size(); ++i) {
    const auto& a = attrs.attributes[static_cast<std::size_t>(i)];
    std::snprintf(buf, sizeof(buf), "%d\t", i + 1);
    out += buf;
    out += a.lemma;
    std::snprintf(buf, sizeof(buf), "\t%.6f\n", a.ig);
    out += buf;
  }
  return out;
}

IndexedCorpus index_corpus(const Corpus& corpus, const Lemmatizer& lemmatizer) {
  IndexedCorpus idx;
  idx.corpus = &corpus;
  idx.msg_lemmas.resize(static_cast<std::size_t>(corpus.size()));
  for (int i = 0; i < corpus.size(); ++i) {
    std::vector<int>& ids = idx.msg_lemmas[static_cast<std::size_t>(i)];
    for (const std::string& lemma : lemma_set(corpus.at(i), lemmatizer)) {
      auto [it, inserted] =
          idx.lemma_id.emplace(lemma, static_cast<int>(idx.lexicon.size()));
      if (inserted) idx.lexicon.push_back(lemma);
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
  }
  return idx;
}

RankedAttributes rank_attributes(const IndexedCorpus& idx, std::span<const int> subset,
                                 int min_doc_freq) {
  if (subset.empty()) throw std::invalid_argument("empty training subset");
  std::vector<long> df(idx.lexicon.size(), 0);
  std::vector<long> spam_df(idx.lexicon.size(), 0);
  long n_spam = 0;
  for (int mi : subset) {
    const bool is_spam = idx.corpus->at(mi).label == Category::spam;
    if (is_spam) ++n_spam;
    for (int id : idx.msg_lemmas[static_cast<std::size_t>(mi)]) {
      ++df[static_cast<std::size_t>(id)];
      if (is_spam) ++spam_df[static_cast<std::size_t>(id)];
    }
  }
  const long n_legit = static_cast<long>(subset.size()) - n_spam;

  std::vector<std::pair<int, double>> scored;
  for (std::size_t id = 0; id < idx.lexicon.size(); ++id) {
    if (df[id] < min_doc_freq) continue;
    AttrClassCounts c;
    c.x1_spam = spam_df[id];
    c.x1_legit = df[id] - spam_df[id];
    c.x0_spam = n_spam - c.x1_spam;
    c.x0_legit = n_legit - c.x1_legit;
    scored.emplace_back(static_cast<int>(id), information_gain(c));
  }
  std::sort(scored.begin(), scored.end(),
            [&](const std::pair<int, double>& a, const std::pair<int, double>& b) {
              if (a.second != b.second) return a.second > b.second;
              return idx.lexicon[static_cast<std::size_t>(a.first)] <
                     idx.lexicon[static_cast<std::size_t>(b.first)];
            });

  RankedAttributes ranked;
  ranked.lemma_ids.reserve(scored.size());
  ranked.ig.reserve(scored.size());
  for (const auto& [id, ig] : scored) {
    ranked.lemma_ids.push_back(id);
    ranked.ig.push_back(ig);
  }
  return ranked;
}

AttributeSet attribute_prefix(const IndexedCorpus& idx, const RankedAttributes& ranked, int m) {
  const int take = std::min(m, ranked.size());
  AttributeSet set;
  set.attributes.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) {
    set.attributes.push_back(
        {idx.lexicon[static_cast<std::size_t>(ranked.lemma_ids[static_cast<std::size_t>(i)])],
         ranked.ig[static_cast<std::size_t>(i)]});
  }
  return set;
}

Eigen::MatrixXd binary_matrix(const IndexedCorpus& idx, std::span<const int> subset,
                              std::span<const int> attr_lemma_ids) {
  std::vector<int> col_of(idx.lexicon.size(), -1);
  for (std::size_t c = 0; c < attr_lemma_ids.size(); ++c) {
    col_of[static_cast<std::size_t>(attr_lemma_ids[c])] = static_cast<int>(c);
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(subset.size()),
                                            static_cast<Eigen::Index>(attr_lemma_ids.size()));
  for (std::size_t r = 0; r < subset.size(); ++r) {
    for (int id : idx.msg_lemmas[static_cast<std::size_t>(subset[r])]) {
      const int c = col_of[static_cast<std::size_t>(id)];
      if (c >= 0) x(static_cast<Eigen::Index>(r), c) = 1.0;
    }
  }
  return x;
}

}  // namespace spamstack
