#include "flda/io/synthetic.hpp"

#include "flda/error.hpp"
#include "flda/rng.hpp"
#include "flda/samplers.hpp"

namespace flda::io {

namespace {

std::vector<double> dirichlet(RngStream& rng, double concentration, int dim) {
  std::vector<double> x(dim);
  double total = 0.0;
  for (double& v : x) {
    v = rng.gamma(concentration);
    total += v;
  }
  if (total <= 0.0) {
    // all-gamma underflow; fall back to a point mass on one coordinate
    x.assign(dim, 0.0);
    x[rng.uniform_below(dim)] = 1.0;
    return x;
  }
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  if (spec.num_docs < 1 || spec.vocab_size < 1 || spec.num_topics < 1 ||
      spec.mean_doc_length <= 0.0 || spec.alpha <= 0.0 || spec.beta <= 0.0)
    throw ContractViolationError("generate_synthetic: invalid spec");

  RngStream rng(spec.seed, 0);
  SyntheticCorpus out;

  out.topics.reserve(spec.num_topics);
  std::vector<Cdf> topic_cdf;
  topic_cdf.reserve(spec.num_topics);
  for (std::int32_t t = 0; t < spec.num_topics; ++t) {
    out.topics.push_back(dirichlet(rng, spec.beta, spec.vocab_size));
    topic_cdf.push_back(cumsum_build(std::span<const double>(out.topics.back())));
  }

  std::vector<Token> tokens;
  out.proportions.reserve(spec.num_docs);
  for (std::int32_t d = 0; d < spec.num_docs; ++d) {
    out.proportions.push_back(dirichlet(rng, spec.alpha, spec.num_topics));
    const Cdf theta_cdf =
        cumsum_build(std::span<const double>(out.proportions.back()));
    std::uint64_t len = rng.poisson(spec.mean_doc_length);
    if (len < 1) len = 1;
    for (std::uint64_t k = 0; k < len; ++k) {
      const int t = bsearch_sample(theta_cdf, rng.uniform(theta_cdf.total()));
      const int w =
          bsearch_sample(topic_cdf[t], rng.uniform(topic_cdf[t].total()));
      tokens.push_back(Token{d, static_cast<std::int32_t>(w)});
    }
  }

  out.corpus = Corpus(spec.num_docs, spec.vocab_size, std::move(tokens));
  return out;
}

}  // namespace flda::io
