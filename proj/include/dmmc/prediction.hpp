#pragma once

// Missing-call recommendations from an almost-similar neighbourhood.
//
// R(x) holds every call made by some almost-similar neighbour but not by x.
// The likelihood of m in R(x) is the fraction of neighbours that call m, and
// a call is reported as missing when its likelihood passes the threshold.

#include <cstddef>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"
#include "dmmc/fraction.hpp"
#include "dmmc/similarity.hpp"

namespace dmmc {

struct Recommendation {
  std::string method;
  /// support / |A|
  Fraction likelihood;
  /// Number of almost-similar neighbours calling `method`.
  std::size_t support = 0;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct PredictionConfig {
  Fraction threshold{9, 10};
  /// likelihood > threshold when true, likelihood >= threshold otherwise.
  bool strict_comparison = true;

  /// Throws InvalidArgument when the threshold exceeds 1.
  void validate() const;
  bool passes(const Fraction& likelihood) const {
    return strict_comparison ? likelihood > threshold : likelihood >= threshold;
  }
};

/// R(q), sorted by method name.
std::vector<std::string> candidate_calls(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                         const Corpus& corpus);
std::vector<std::string> candidate_calls(const Query& q, const std::vector<std::string>& a_ids,
                                         const Corpus& corpus);

/// One recommendation per member of R(q), by likelihood descending then name
/// ascending. Empty when there are no neighbours.
std::vector<Recommendation> likelihoods(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                        const Corpus& corpus);
std::vector<Recommendation> likelihoods(const Query& q, const std::vector<std::string>& a_ids,
                                        const Corpus& corpus);

/// Keeps the ranked recommendations whose likelihood passes cfg; order is preserved.
std::vector<Recommendation> filter_missing(const std::vector<Recommendation>& ranked,
                                           const PredictionConfig& cfg);

std::vector<Recommendation> missing(const ResolvedQuery& q, const std::vector<UsageIndex>& almost,
                                    const Corpus& corpus, const PredictionConfig& cfg);
std::vector<Recommendation> missing(const Query& q, const std::vector<std::string>& a_ids,
                                    const Corpus& corpus, const PredictionConfig& cfg);

}  // namespace dmmc
