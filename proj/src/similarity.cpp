#include "dmmc/similarity.hpp"

#include <algorithm>

#include "dmmc/error.hpp"

namespace dmmc {

void SimilarityParams::validate() const {
  if (k < 1) throw InvalidArgument("k must be at least 1, got " + std::to_string(k));
}

ResolvedQuery::ResolvedQuery(const Query& q, const Corpus& corpus)
    : type_name_(q.type_name), context_(q.context) {
  bucket_ = corpus.bucket_members(type_name_, context_);
  type_members_ = corpus.type_members(type_name_);

  std::vector<std::string> names = q.calls;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  call_count_ = names.size();
  for (const auto& name : names) {
    if (const auto id = corpus.method_id(name)) {
      calls_.push_back(*id);
    } else {
      calls_known_ = false;
    }
  }
  std::sort(calls_.begin(), calls_.end());

  if (q.exclude_id) excluded_ = corpus.index_of(*q.exclude_id);
}

ResolvedQuery ResolvedQuery::of_usage(UsageIndex subject, const Corpus& corpus) {
  ResolvedQuery r;
  const auto& u = corpus.at(subject);
  r.type_name_ = u.type_name;
  r.context_ = u.context;
  r.bucket_ = corpus.bucket_members_of(subject);
  r.type_members_ = corpus.type_members_of(subject);
  const auto ids = corpus.call_ids(subject);
  r.calls_.assign(ids.begin(), ids.end());
  r.call_count_ = r.calls_.size();
  r.excluded_ = subject;
  return r;
}

ResolvedQuery ResolvedQuery::degraded(UsageIndex seed, MethodId removed,
                                      std::optional<UsageIndex> excluded, const Corpus& corpus) {
  ResolvedQuery r = of_usage(seed, corpus);
  const auto it = std::find(r.calls_.begin(), r.calls_.end(), removed);
  if (it == r.calls_.end()) {
    throw InvalidArgument("method '" + corpus.method_name(removed) + "' is not called by usage '" +
                          corpus.at(seed).id + "'");
  }
  r.calls_.erase(it);
  r.call_count_ = r.calls_.size();
  r.excluded_ = excluded;
  return r;
}

std::span<const UsageIndex> candidates(const ResolvedQuery& q, const Corpus& /*corpus*/,
                                       const SimilarityParams& p) {
  return p.use_context ? q.bucket() : q.type_members();
}

SimilarityResult similarity(const ResolvedQuery& q, const Corpus& corpus, const SimilarityParams& p) {
  p.validate();
  SimilarityResult result;
  if (!q.calls_known()) return result;

  const auto& query_calls = q.calls();
  const std::size_t n = q.call_count();
  const auto k = static_cast<std::size_t>(p.k);
  for (const auto y : candidates(q, corpus, p)) {
    if (q.excluded() && *q.excluded() == y) continue;
    const auto other = corpus.call_ids(y);
    if (other.size() == n) {
      if (std::equal(other.begin(), other.end(), query_calls.begin(), query_calls.end())) {
        ++result.e_count;
      }
    } else if (other.size() > n && other.size() - n <= k &&
               std::includes(other.begin(), other.end(), query_calls.begin(), query_calls.end())) {
      result.almost.push_back(y);
    }
  }
  return result;
}

std::size_t exactly_similar(const Query& q, const Corpus& corpus, const SimilarityParams& p) {
  return similarity(ResolvedQuery(q, corpus), corpus, p).e_count;
}

std::vector<std::string> almost_similar(const Query& q, const Corpus& corpus, const SimilarityParams& p) {
  return ids_of(similarity(ResolvedQuery(q, corpus), corpus, p).almost, corpus);
}

bool is_redundant(std::string_view id, const Corpus& corpus) { return corpus.is_redundant(id); }

SimilarityResult similarity_of(std::string_view id, const Corpus& corpus, const SimilarityParams& p) {
  return similarity_of(corpus.index_of(id), corpus, p);
}

SimilarityResult similarity_of(UsageIndex subject, const Corpus& corpus, const SimilarityParams& p) {
  return similarity(ResolvedQuery::of_usage(subject, corpus), corpus, p);
}

std::vector<std::string> ids_of(const std::vector<UsageIndex>& members, const Corpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(members.size());
  for (const auto i : members) ids.push_back(corpus.at(i).id);
  return ids;
}

}  // namespace dmmc
