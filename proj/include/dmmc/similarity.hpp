#pragma once

// Exact-similarity and almost-similarity of type-usages.
//
// y is exactly-similar to x when both share type, context and call-set.
// y is almost-similar to x when both share type and context, M(x) is a
// strict subset of M(y), and M(y) has at most k extra calls. Both lookups
// scan only the (type, context) bucket of the subject, so answering one
// query is linear in the bucket size.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"

namespace dmmc {

struct SimilarityParams {
  /// Maximum number of extra calls admitted into almost-similarity.
  /// Differences of 1..k all qualify.
  int k = 1;
  /// When false, the context condition is dropped from both relations;
  /// type equality is always required.
  bool use_context = true;

  /// Throws InvalidArgument when k < 1.
  void validate() const;
};

struct Query {
  std::string type_name;
  std::string context;
  std::vector<std::string> calls;
  /// Usage left out of the corpus while matching (leave-one-out).
  std::optional<std::string> exclude_id;
};

struct SimilarityResult {
  /// |E|, counting the subject itself.
  std::size_t e_count = 1;
  /// Members of A, as corpus positions in input order.
  std::vector<UsageIndex> almost;

  std::size_t a_count() const noexcept { return almost.size(); }
};

/// Query resolved against the interned vocabulary of a corpus.
class ResolvedQuery {
 public:
  /// Throws UnknownId if q.exclude_id names no usage.
  ResolvedQuery(const Query& q, const Corpus& corpus);

  /// In-corpus subject: the usage's own fields, excluding the usage itself.
  static ResolvedQuery of_usage(UsageIndex subject, const Corpus& corpus);

  /// Subject's call-set with one call removed, excluding `excluded` (if any).
  static ResolvedQuery degraded(UsageIndex seed, MethodId removed, std::optional<UsageIndex> excluded,
                                const Corpus& corpus);

  /// Stored usages sharing the query's type and context.
  std::span<const UsageIndex> bucket() const noexcept { return bucket_; }
  /// Stored usages sharing the query's type.
  std::span<const UsageIndex> type_members() const noexcept { return type_members_; }
  /// False when the query names a call absent from the whole corpus; such a
  /// query cannot be a subset of, or equal to, any stored call-set.
  bool calls_known() const noexcept { return calls_known_; }
  const std::vector<MethodId>& calls() const noexcept { return calls_; }
  std::size_t call_count() const noexcept { return call_count_; }
  std::optional<UsageIndex> excluded() const noexcept { return excluded_; }
  const std::string& type_name() const noexcept { return type_name_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ResolvedQuery() = default;

  std::string type_name_;
  std::string context_;
  std::span<const UsageIndex> bucket_;
  std::span<const UsageIndex> type_members_;
  bool calls_known_ = true;
  std::vector<MethodId> calls_;
  std::size_t call_count_ = 0;
  std::optional<UsageIndex> excluded_;
};

/// Candidate neighbours of a query: its bucket, or its whole type when the
/// context condition is off.
std::span<const UsageIndex> candidates(const ResolvedQuery& q, const Corpus& corpus,
                                       const SimilarityParams& p);

SimilarityResult similarity(const ResolvedQuery& q, const Corpus& corpus, const SimilarityParams& p);

/// 1 + number of stored usages exactly similar to q (the subject counts once).
std::size_t exactly_similar(const Query& q, const Corpus& corpus, const SimilarityParams& p = {});

/// Ids of the almost-similar usages, in input order.
std::vector<std::string> almost_similar(const Query& q, const Corpus& corpus,
                                        const SimilarityParams& p = {});

/// Throws UnknownId.
bool is_redundant(std::string_view id, const Corpus& corpus);

/// E and A of a stored usage, which is excluded from its own neighbourhood.
/// Throws UnknownId.
SimilarityResult similarity_of(std::string_view id, const Corpus& corpus,
                               const SimilarityParams& p = {});
SimilarityResult similarity_of(UsageIndex subject, const Corpus& corpus,
                               const SimilarityParams& p = {});

std::vector<std::string> ids_of(const std::vector<UsageIndex>& members, const Corpus& corpus);

}  // namespace dmmc
