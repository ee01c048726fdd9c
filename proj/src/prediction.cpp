#include "dmmc/prediction.hpp"

#include <algorithm>
#include <unordered_map>

#include "dmmc/error.hpp"

namespace dmmc {

namespace {

std::vector<UsageIndex> indices_of(const std::vector<std::string>& ids, const Corpus& corpus) {
  std::vector<UsageIndex> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(corpus.index_of(id));
  return out;
}

// support count per call absent from q, in first-seen order
std::vector<std::pair<MethodId, std::size_t>> count_support(const ResolvedQuery& q,
                                                            const std::vector<UsageIndex>& almost,
                                                            const Corpus& corpus) {
  const auto& own = q.calls();
  std::unordered_map<MethodId, std::size_t> slot;
  std::vector<std::pair<MethodId, std::size_t>> counts;
  for (const auto z : almost) {
    for (const auto m : corpus.call_ids(z)) {
      if (std::binary_search(own.begin(), own.end(), m)) continue;
      const auto [it, inserted] = slot.try_emplace(m, counts.size());
      if (inserted) counts.emplace_back(m, 0);
      ++counts[it->second].second;
    }
  }
  return counts;
}

}  // namespace

void PredictionConfig::validate() const {
  if (threshold > Fraction::one()) {
    throw InvalidArgument("threshold must lie in [0, 1], got " + threshold.to_short_decimal());
  }
}

std::vector<std::string> candidate_calls(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                         const Corpus& corpus) {
  std::vector<std::string> names;
  for (const auto& [m, support] : count_support(q, almost, corpus)) names.push_back(corpus.method_name(m));
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<std::string> candidate_calls(const Query& q, const std::vector<std::string>& a_ids,
                                         const Corpus& corpus) {
  return candidate_calls(ResolvedQuery(q, corpus), indices_of(a_ids, corpus), corpus);
}

std::vector<Recommendation> likelihoods(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                        const Corpus& corpus) {
  std::vector<Recommendation> recs;
  if (almost.empty()) return recs;
  for (const auto& [m, support] : count_support(q, almost, corpus)) {
    recs.push_back({corpus.method_name(m), Fraction(support, almost.size()), support});
  }
  std::sort(recs.begin(), recs.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.method < b.method;
  });
  return recs;
}

std::vector<Recommendation> likelihoods(const Query& q, const std::vector<std::string>& a_ids,
                                        const Corpus& corpus) {
  return likelihoods(ResolvedQuery(q, corpus), indices_of(a_ids, corpus), corpus);
}

std::vector<Recommendation> filter_missing(const std::vector<Recommendation>& ranked,
                                           const PredictionConfig& cfg) {
  cfg.validate();
  std::vector<Recommendation> kept;
  std::copy_if(ranked.begin(), ranked.end(), std::back_inserter(kept),
               [&](const Recommendation& r) { return cfg.passes(r.likelihood); });
  return kept;
}

std::vector<Recommendation> missing(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                    const Corpus& corpus, const PredictionConfig& cfg) {
  return filter_missing(likelihoods(q, almost, corpus), cfg);
}

std::vector<Recommendation> missing(const Query& q, const std::vector<std::string>& a_ids,
                                    const Corpus& corpus, const PredictionConfig& cfg) {
  return filter_missing(likelihoods(q, a_ids, corpus), cfg);
}

}  // namespace dmmc
