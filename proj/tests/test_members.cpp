#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spamstack/corpus.hpp"
#include "spamstack/members.hpp"
#include "spamstack/serialize.hpp"
#include "synthetic.hpp"

using namespace spamstack;

namespace {

// Values on a coarse dyadic grid keep every product and partial sum exactly
// representable, so matrix and scalar paths must agree to the last bit.
double grid64(std::mt19937_64& rng) {
  return static_cast<double>(detail::bounded_rand(rng, 65)) / 64.0;
}

double grid8_weight(std::mt19937_64& rng) {
  return static_cast<double>(1 + detail::bounded_rand(rng, 8)) / 8.0;
}

std::vector<Category> random_labels(std::mt19937_64& rng, int n) {
  std::vector<Category> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) {
    l = detail::bounded_rand(rng, 2) ? Category::spam : Category::legitimate;
  }
  return labels;
}

MemoryBasedModel random_grid_model(std::mt19937_64& rng, int n, int binary_dims,
                                   int continuous_dims, int k, KSemantics semantics) {
  const int d = binary_dims + continuous_dims;
  Eigen::MatrixXd instances(n, d);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < binary_dims; ++c) {
      instances(r, c) = static_cast<double>(detail::bounded_rand(rng, 2));
    }
    for (int c = binary_dims; c < d; ++c) instances(r, c) = grid64(rng);
  }
  Eigen::VectorXd weights(d);
  for (int c = 0; c < d; ++c) weights(c) = grid8_weight(rng);
  return make_memory_model(std::move(instances), random_labels(rng, n), std::move(weights), k,
                           semantics, binary_dims);
}

Eigen::VectorXd random_grid_query(std::mt19937_64& rng, int binary_dims, int continuous_dims) {
  Eigen::VectorXd q(binary_dims + continuous_dims);
  for (int c = 0; c < binary_dims; ++c) {
    q(c) = static_cast<double>(detail::bounded_rand(rng, 2));
  }
  for (int c = binary_dims; c < binary_dims + continuous_dims; ++c) q(c) = grid64(rng);
  return q;
}

}  // namespace

TEST_CASE("classify applies the strict lambda threshold") {
  CHECK(classify({0.6, 0.4}, 1.0) == Category::spam);
  CHECK(classify({0.4, 0.6}, 1.0) == Category::legitimate);
  // Exact threshold stays legitimate: the criterion is strict.
  CHECK(classify({0.5, 0.5}, 1.0) == Category::legitimate);
  CHECK(classify({0.9, 0.1}, 9.0) == Category::legitimate);
  CHECK(classify({0.91, 0.09}, 9.0) == Category::spam);
  // Total certainty outweighs any finite lambda.
  CHECK(classify({1.0, 0.0}, 999.0) == Category::spam);

  CHECK_THROWS_AS(classify({0.5, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(classify({0.5, 0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("classify becomes monotonically more conservative in lambda") {
  const Confidence conf = {0.8, 0.2};
  bool was_legit = false;
  for (double lambda : {0.5, 1.0, 2.0, 3.0, 5.0, 9.0, 100.0}) {
    const bool legit = classify(conf, lambda) == Category::legitimate;
    CHECK((!was_legit || legit));  // once legitimate, stays legitimate
    was_legit = legit;
  }
  CHECK(classify(conf, 1.0) == Category::spam);
  CHECK(classify(conf, 9.0) == Category::legitimate);
}

TEST_CASE("nb_train computes Laplace-smoothed frequencies") {
  Eigen::MatrixXd x(6, 1);
  x << 1, 0, 0, 0, 1, 1;
  const std::vector<Category> labels = {Category::legitimate, Category::legitimate,
                                        Category::legitimate, Category::legitimate,
                                        Category::spam, Category::spam};
  const NaiveBayesModel model = nb_train(x, labels);
  CHECK(model.attribute_count() == 1);
  CHECK(model.prior(0) == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
  CHECK(model.prior(1) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  // Legitimate: (1 + 1) / (4 + 2); spam: (2 + 1) / (2 + 2).
  CHECK(model.cond(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(model.cond(0, 1) == doctest::Approx(3.0 / 4.0).epsilon(1e-15));

  // Posterior for x = 1: spam (1/3)(3/4) vs legitimate (2/3)(1/3) -> 9/17.
  const Confidence conf = nb_confidence(model, Eigen::VectorXd::Ones(1));
  CHECK(conf.w_spam == doctest::Approx(9.0 / 17.0).epsilon(1e-12));
  CHECK(conf.w_spam + conf.w_legit == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(conf.w_spam ==
        doctest::Approx(oracles::nb_posterior_direct(model, Eigen::VectorXd::Ones(1)))
            .epsilon(1e-12));

  // A never-seen attribute keeps nonzero mass in both classes.
  CHECK(model.cond(0, 0) > 0.0);
  CHECK(model.cond(0, 1) < 1.0);
}

TEST_CASE("nb_train validates its inputs") {
  Eigen::MatrixXd x(2, 1);
  x << 1, 0;
  CHECK_THROWS_AS(nb_train(x, {Category::spam, Category::spam}), std::invalid_argument);
  CHECK_THROWS_AS(nb_train(x, {Category::legitimate}), std::invalid_argument);
  CHECK_THROWS_AS(nb_train(x, {Category::legitimate, Category::spam}, 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(nb_train(x, {Category::legitimate, Category::spam}, 0.5));
}

TEST_CASE("nb smoothing weight enters as a pseudo-count") {
  Eigen::MatrixXd x(4, 1);
  x << 1, 0, 1, 1;
  const std::vector<Category> labels = {Category::legitimate, Category::legitimate,
                                        Category::spam, Category::spam};
  const NaiveBayesModel half = nb_train(x, labels, 0.5);
  CHECK(half.cond(0, 0) == doctest::Approx(1.5 / 3.0).epsilon(1e-15));
  CHECK(half.cond(0, 1) == doctest::Approx(2.5 / 3.0).epsilon(1e-15));
  CHECK(half.smoothing == 0.5);
}

TEST_CASE("nb log-space scoring equals the direct product over every query") {
  std::mt19937_64 rng(23);
  const int m = 8;
  const int n = 40;
  Eigen::MatrixXd x(n, m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) x(r, c) = static_cast<double>(detail::bounded_rand(rng, 2));
  }
  std::vector<Category> labels = random_labels(rng, n);
  labels[0] = Category::legitimate;  // both classes guaranteed
  labels[1] = Category::spam;
  const NaiveBayesModel model = nb_train(x, labels);

  Eigen::MatrixXd queries(1 << m, m);
  for (int q = 0; q < (1 << m); ++q) {
    for (int c = 0; c < m; ++c) queries(q, c) = (q >> c) & 1 ? 1.0 : 0.0;
  }
  const std::vector<Confidence> got = nb_confidences(model, queries);
  for (int q = 0; q < (1 << m); ++q) {
    const double expect = oracles::nb_posterior_direct(model, queries.row(q).transpose());
    CHECK(got[static_cast<std::size_t>(q)].w_spam == doctest::Approx(expect).epsilon(1e-9));
  }

  CHECK_THROWS_AS(nb_confidences(model, Eigen::MatrixXd::Zero(1, m + 1)),
                  std::invalid_argument);
}

TEST_CASE("nb confidences saturate without NaN on long separable vectors") {
  // 400 attributes that all point the same way drive the posterior to the
  // boundary; the logistic form must not produce NaN.
  const int m = 400;
  Eigen::MatrixXd x(4, m);
  x.row(0).setOnes();
  x.row(1).setOnes();
  x.row(2).setZero();
  x.row(3).setZero();
  const std::vector<Category> labels = {Category::spam, Category::spam, Category::legitimate,
                                        Category::legitimate};
  const NaiveBayesModel model = nb_train(x, labels);
  const Confidence all_on = nb_confidence(model, Eigen::VectorXd::Ones(m));
  const Confidence all_off = nb_confidence(model, Eigen::VectorXd::Zero(m));
  CHECK(std::isfinite(all_on.w_spam));
  CHECK(std::isfinite(all_off.w_spam));
  CHECK(all_on.w_spam > 0.999999);
  CHECK(all_off.w_spam < 0.000001);
}

TEST_CASE("distance is the weighted overlap metric") {
  Eigen::VectorXd a(3), b(3), w(3);
  a << 1, 0, 1;
  b << 1, 1, 0;
  w << 0.5, 2, 4;
  CHECK(distance(a, b, w) == 6.0);
  CHECK(distance(a, a, w) == 0.0);
  CHECK(distance(a, b, w) == distance(b, a, w));

  // Continuous coordinates contribute their absolute difference.
  Eigen::VectorXd c(2), d(2), w2(2);
  c << 0.75, 0.25;
  d << 0.25, 0.25;
  w2 << 2, 8;
  CHECK(distance(c, d, w2) == 1.0);

  Eigen::VectorXd short_w(2);
  short_w << 1, 1;
  CHECK_THROWS_AS(distance(a, b, short_w), std::invalid_argument);
}

TEST_CASE("make_memory_model validates shapes and parameters") {
  Eigen::MatrixXd inst = Eigen::MatrixXd::Zero(3, 2);
  const std::vector<Category> labels(3, Category::spam);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2);

  const MemoryBasedModel ok = make_memory_model(inst, labels, w, 2);
  CHECK(ok.size() == 3);
  CHECK(ok.dims() == 2);
  CHECK(ok.binary_dims == 2);  // -1 default marks every column binary

  const MemoryBasedModel mixed = make_memory_model(inst, labels, w, 2,
                                                   KSemantics::instances, 1);
  CHECK(mixed.binary_dims == 1);

  CHECK_THROWS_AS(make_memory_model(inst, std::vector<Category>(2, Category::spam), w, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_memory_model(inst, labels, Eigen::VectorXd::Ones(3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_memory_model(inst, labels, w, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_memory_model(inst, labels, -w, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_memory_model(inst, labels, w, 1, KSemantics::distance_bands, 3),
                  std::invalid_argument);
}

TEST_CASE("pairwise_distances matches the scalar formula bit for bit on grid data") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(detail::bounded_rand(rng, 20));
    const MemoryBasedModel model = random_grid_model(rng, n, 6, 2, 1,
                                                     KSemantics::distance_bands);
    Eigen::MatrixXd queries(3, 8);
    for (int r = 0; r < 3; ++r) queries.row(r) = random_grid_query(rng, 6, 2).transpose();
    queries.row(2) = model.instances.row(0);  // identical pair must land on exact zero

    const Eigen::MatrixXd dist = pairwise_distances(model, queries);
    REQUIRE(dist.rows() == 3);
    REQUIRE(dist.cols() == n);
    for (int r = 0; r < 3; ++r) {
      for (int i = 0; i < n; ++i) {
        const double expect = oracles::distance_direct(
            model.instances.row(i).transpose(), queries.row(r).transpose(), model.weights);
        CHECK(dist(r, i) == expect);
        CHECK(dist(r, i) >= 0.0);
      }
    }
    CHECK(dist(2, 0) == 0.0);

    const Eigen::VectorXd single = distances_to(model, queries.row(0).transpose());
    for (int i = 0; i < n; ++i) CHECK(single(i) == dist(0, i));
  }
}

TEST_CASE("knn vote weights neighbors by inverse cubed distance") {
  // One spam neighbor at distance 1, two legitimate at distance 2:
  // w_spam = 1 / (1 + 1/8 + 1/8) = 0.8.
  Eigen::MatrixXd inst(3, 1);
  inst << 1.0, 2.0, 2.0;
  const std::vector<Category> labels = {Category::spam, Category::legitimate,
                                        Category::legitimate};
  const MemoryBasedModel model = make_memory_model(inst, labels, Eigen::VectorXd::Ones(1), 2,
                                                   KSemantics::distance_bands, 0);
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);
  const Confidence conf = knn_confidence(model, origin);
  CHECK(conf.w_spam == 0.8);
  CHECK(conf.w_legit == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("knn distance bands include ties, instance semantics cut them") {
  Eigen::MatrixXd inst(4, 1);
  inst << 0.5, 1.0, 1.0, 2.0;
  const std::vector<Category> labels = {Category::spam, Category::legitimate,
                                        Category::legitimate, Category::spam};
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(1);

  const MemoryBasedModel bands = make_memory_model(inst, labels, Eigen::VectorXd::Ones(1), 2,
                                                   KSemantics::distance_bands, 0);
  CHECK(knn_neighborhood(bands, origin) == std::vector<int>{0, 1, 2});

  const MemoryBasedModel cut = make_memory_model(inst, labels, Eigen::VectorXd::Ones(1), 2,
                                                 KSemantics::instances, 0);
  CHECK(knn_neighborhood(cut, origin) == std::vector<int>{0, 1});

  // k beyond the stored instances takes everything.
  const MemoryBasedModel wide = make_memory_model(inst, labels, Eigen::VectorXd::Ones(1), 9,
                                                  KSemantics::instances, 0);
  CHECK(knn_neighborhood(wide, origin).size() == 4);
}

TEST_CASE("zero-distance neighbors take over the vote") {
  Eigen::MatrixXd inst(5, 2);
  inst << 1, 0,  // same point as the query, spam
      1, 0,      // same point, legitimate
      1, 0,      // same point, spam
      0, 1, 0, 0;
  const std::vector<Category> labels = {Category::spam, Category::legitimate, Category::spam,
                                        Category::legitimate, Category::legitimate};
  const MemoryBasedModel model =
      make_memory_model(inst, labels, Eigen::VectorXd::Ones(2), 3);
  Eigen::VectorXd q(2);
  q << 1, 0;
  const Confidence conf = knn_confidence(model, q);
  CHECK(conf.w_spam == 2.0 / 3.0);

  // All-zero weights make every distance zero: the vote is the global
  // spam fraction.
  const MemoryBasedModel flat =
      make_memory_model(inst, labels, Eigen::VectorXd::Zero(2), 3);
  CHECK(knn_confidence(flat, q).w_spam == 2.0 / 5.0);
}

TEST_CASE("knn vote is invariant to exact weight rescaling") {
  std::mt19937_64 rng(47);
  const MemoryBasedModel model = random_grid_model(rng, 16, 5, 1, 3,
                                                   KSemantics::distance_bands);
  MemoryBasedModel scaled = model;
  scaled.weights *= 4.0;  // power of two: distances scale without rounding

  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd q = random_grid_query(rng, 5, 1);
    const Confidence a = knn_confidence(model, q);
    const Confidence b = knn_confidence(scaled, q);
    CHECK(a.w_spam == b.w_spam);
  }
}

TEST_CASE("knn neighborhood and vote match the exhaustive oracle") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(detail::bounded_rand(rng, 30));
    const int k = 1 + static_cast<int>(detail::bounded_rand(rng, 5));
    const KSemantics semantics = detail::bounded_rand(rng, 2) ? KSemantics::distance_bands
                                                              : KSemantics::instances;
    const MemoryBasedModel model = random_grid_model(rng, n, 4, 2, k, semantics);
    const Eigen::VectorXd q = random_grid_query(rng, 4, 2);

    // Grid data makes both distance computations exact, so the orderings
    // and neighborhoods agree exactly, not just approximately.
    CHECK(knn_neighborhood(model, q) == oracles::knn_neighborhood_exhaustive(model, q));
    CHECK(knn_confidence(model, q).w_spam ==
          doctest::Approx(oracles::knn_vote_direct(model, q)).epsilon(1e-12));
  }
}

TEST_CASE("knn_votes_multi_k equals one knn_confidence per k") {
  std::mt19937_64 rng(59);
  const MemoryBasedModel base = random_grid_model(rng, 20, 6, 0, 1,
                                                  KSemantics::distance_bands);
  const Eigen::VectorXd q = random_grid_query(rng, 6, 0);
  const Eigen::VectorXd dist = distances_to(base, q);

  const std::vector<int> ks = {1, 2, 3, 5, 8};
  for (KSemantics semantics : {KSemantics::distance_bands, KSemantics::instances}) {
    const std::vector<Confidence> multi = knn_votes_multi_k(dist, base.labels, ks, semantics);
    REQUIRE(multi.size() == ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      MemoryBasedModel m = base;
      m.k = ks[i];
      m.semantics = semantics;
      CHECK(multi[i].w_spam == knn_confidence(m, q).w_spam);
    }
  }

  CHECK_THROWS_AS(knn_votes_multi_k(Eigen::VectorXd(), {}, ks, KSemantics::distance_bands),
                  std::invalid_argument);
}

TEST_CASE("member trainers reproduce the explicit pipeline") {
  const Corpus c = synthetic::make_corpus({.n_legit = 60, .n_spam = 30, .seed = 21});
  const IndexedCorpus idx = index_corpus(c);
  std::vector<int> train_ids, test_ids;
  for (int i = 0; i < c.size(); ++i) (i % 3 ? train_ids : test_ids).push_back(i);

  const NbParams nb_params{20, 1.0};
  const auto nb_member = make_nb_trainer(nb_params)(idx, train_ids);
  CHECK(nb_member->training_size() == static_cast<int>(train_ids.size()));

  const KnnParams knn_params{3, 25};
  const auto knn_member = make_knn_trainer(knn_params)(idx, train_ids);
  CHECK(knn_member->training_size() == static_cast<int>(train_ids.size()));

  // Hand-built equivalent of the NB trainer.
  const RankedAttributes ranked = rank_attributes(idx, train_ids, 4);
  const int m_nb = std::min(nb_params.m, ranked.size());
  const std::vector<int> nb_ids(ranked.lemma_ids.begin(), ranked.lemma_ids.begin() + m_nb);
  std::vector<Category> train_labels;
  for (int i : train_ids) train_labels.push_back(c.at(i).label);
  const NaiveBayesModel nb_model =
      nb_train(binary_matrix(idx, train_ids, nb_ids), train_labels);
  const std::vector<Confidence> expect_nb =
      nb_confidences(nb_model, binary_matrix(idx, test_ids, nb_ids));

  const std::vector<Confidence> got_nb = nb_member->score(idx, test_ids);
  REQUIRE(got_nb.size() == expect_nb.size());
  for (std::size_t i = 0; i < got_nb.size(); ++i) {
    CHECK(got_nb[i].w_spam == expect_nb[i].w_spam);
  }

  // Hand-built equivalent of the k-NN trainer, IG weights included.
  const int m_knn = std::min(knn_params.m, ranked.size());
  const std::vector<int> knn_ids(ranked.lemma_ids.begin(), ranked.lemma_ids.begin() + m_knn);
  const AttributeSet knn_attrs = attribute_prefix(idx, ranked, m_knn);
  const MemoryBasedModel knn_model =
      make_memory_model(binary_matrix(idx, train_ids, knn_ids), train_labels,
                        knn_attrs.weights(), knn_params.k);
  const std::vector<Confidence> expect_knn =
      knn_confidences(knn_model, binary_matrix(idx, test_ids, knn_ids));

  const std::vector<Confidence> got_knn = knn_member->score(idx, test_ids);
  REQUIRE(got_knn.size() == expect_knn.size());
  for (std::size_t i = 0; i < got_knn.size(); ++i) {
    CHECK(got_knn[i].w_spam == expect_knn[i].w_spam);
  }
}

TEST_CASE("score_message agrees with batch scoring") {
  const Corpus c = synthetic::make_corpus({.n_legit = 50, .n_spam = 25, .seed = 33});
  const IndexedCorpus idx = index_corpus(c);
  std::vector<int> train_ids, test_ids;
  for (int i = 0; i < c.size(); ++i) (i % 4 ? train_ids : test_ids).push_back(i);

  for (const auto& trainer :
       {make_nb_trainer({15, 1.0}), make_knn_trainer({2, 20})}) {
    const auto member = trainer(idx, train_ids);
    const std::vector<Confidence> batch = member->score(idx, test_ids);
    for (std::size_t i = 0; i < test_ids.size(); ++i) {
      const Confidence single = member->score_message(c.at(test_ids[i]));
      // Batch GEMM and single-vector paths may round differently.
      CHECK(single.w_spam == doctest::Approx(batch[i].w_spam).epsilon(1e-12));
    }
  }
}

TEST_CASE("fixed ranking overrides the member's own attribute selection") {
  const Corpus c = synthetic::make_corpus({.n_legit = 40, .n_spam = 20, .seed = 13});
  const IndexedCorpus idx = index_corpus(c);
  std::vector<int> all_ids(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i) all_ids[static_cast<std::size_t>(i)] = i;
  // 20 legitimate plus 10 spam messages: both categories present.
  std::vector<int> subset(all_ids.begin() + 20, all_ids.begin() + 50);

  MemberTrainingOptions opts;
  opts.fixed_ranking =
      std::make_shared<RankedAttributes>(rank_attributes(idx, all_ids, 4));

  const auto fixed = make_nb_trainer({10, 1.0}, opts)(idx, subset);

  // Reproduce by hand: global ranking prefix, model trained on the subset.
  const std::vector<int> ids(opts.fixed_ranking->lemma_ids.begin(),
                             opts.fixed_ranking->lemma_ids.begin() + 10);
  std::vector<Category> labels;
  for (int i : subset) labels.push_back(c.at(i).label);
  const NaiveBayesModel expect_model = nb_train(binary_matrix(idx, subset, ids), labels);

  std::vector<int> probe = {0, 5, 55};
  const std::vector<Confidence> got = fixed->score(idx, probe);
  const std::vector<Confidence> expect =
      nb_confidences(expect_model, binary_matrix(idx, probe, ids));
  for (std::size_t i = 0; i < probe.size(); ++i) {
    CHECK(got[i].w_spam == expect[i].w_spam);
  }
}

TEST_CASE("trainers reject subsets whose vocabulary prunes away") {
  const Corpus c = synthetic::make_corpus({.n_legit = 30, .n_spam = 15, .seed = 3});
  const IndexedCorpus idx = index_corpus(c);
  const std::vector<int> two = {0, 30};
  // Two messages cannot reach the default document frequency threshold of 4.
  CHECK_THROWS_AS(make_nb_trainer({10, 1.0})(idx, two), std::runtime_error);
}

TEST_CASE("naive bayes serialization round-trips exactly") {
  std::mt19937_64 rng(67);
  Eigen::MatrixXd x(30, 12);
  for (int r = 0; r < 30; ++r) {
    for (int c = 0; c < 12; ++c) x(r, c) = static_cast<double>(detail::bounded_rand(rng, 2));
  }
  std::vector<Category> labels = random_labels(rng, 30);
  labels[0] = Category::legitimate;
  labels[1] = Category::spam;
  const NaiveBayesModel model = nb_train(x, labels, 0.25);

  std::stringstream buf;
  save_nb_model(model, buf);
  const NaiveBayesModel back = load_nb_model(buf);

  CHECK(back.smoothing == model.smoothing);
  CHECK(back.prior == model.prior);
  CHECK(back.cond == model.cond);

  const Eigen::VectorXd q = x.row(7).transpose();
  CHECK(nb_confidence(back, q).w_spam == nb_confidence(model, q).w_spam);
}

TEST_CASE("memory-based serialization round-trips exactly") {
  std::mt19937_64 rng(71);
  const MemoryBasedModel model = random_grid_model(rng, 18, 5, 2, 4, KSemantics::instances);

  synthetic::TempDir tmp("serialize");
  const auto path = tmp.path() / "model.ssmb";
  save_memory_model(model, path);
  const MemoryBasedModel back = load_memory_model(path);

  CHECK(back.instances == model.instances);
  CHECK(back.labels == model.labels);
  CHECK(back.weights == model.weights);
  CHECK(back.k == model.k);
  CHECK(back.semantics == model.semantics);
  CHECK(back.binary_dims == model.binary_dims);

  const Eigen::VectorXd q = random_grid_query(rng, 5, 2);
  CHECK(knn_confidence(back, q).w_spam == knn_confidence(model, q).w_spam);
}

TEST_CASE("serialization rejects foreign and truncated input") {
  std::stringstream wrong;
  wrong << "not a model at all";
  CHECK_THROWS_AS(load_nb_model(wrong), std::runtime_error);

  std::mt19937_64 rng(73);
  const MemoryBasedModel model = random_grid_model(rng, 6, 3, 0, 1,
                                                   KSemantics::distance_bands);
  std::stringstream full;
  save_memory_model(model, full);
  const std::string bytes = full.str();

  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(load_memory_model(cut), std::runtime_error);

  // Loading an NB stream as a memory model trips the magic check.
  Eigen::MatrixXd x(2, 1);
  x << 1, 0;
  std::stringstream nb_bytes;
  save_nb_model(nb_train(x, {Category::legitimate, Category::spam}), nb_bytes);
  CHECK_THROWS_AS(load_memory_model(nb_bytes), std::runtime_error);
}
