#pragma once

// S-score and corpus-level score distributions.
//
//   S(x) = 1 - |E(x)| / (|E(x)| + |A(x)|)
//
// E(x) always holds x itself, so S is strictly below 1. A high score marks
// a usage that few others share exactly but many extend by one call.

#include <cstddef>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"
#include "dmmc/fraction.hpp"
#include "dmmc/similarity.hpp"

namespace dmmc {

/// Exact S-score. Throws InvalidArgument when e_count is 0.
Fraction s_score(std::size_t e_count, std::size_t a_count);

struct ScoredUsage {
  UsageIndex index = 0;
  std::string id;
  Fraction s_score;
  std::size_t e_count = 1;
  std::size_t a_count = 0;
};

/// One entry per usage, sorted by score descending then id ascending.
std::vector<ScoredUsage> score_all(const Corpus& corpus, const SimilarityParams& p = {});

struct DistributionStats {
  std::size_t n_usages = 0;
  /// Lower-middle element of the ascending score list.
  Fraction median_s;
  double mean_s = 0.0;
  std::size_t n_below_0_1 = 0;
  std::size_t n_above_0_5 = 0;
  std::size_t n_above_0_9 = 0;
  double frac_below_0_1 = 0.0;
  double frac_above_0_5 = 0.0;
  double frac_above_0_9 = 0.0;
  std::size_t n_redundant = 0;
  double frac_redundant = 0.0;
};

/// Throws InvalidArgument on an empty score list.
DistributionStats distribution_stats(const std::vector<ScoredUsage>& scores, const Corpus& corpus);

/// Same statistics over bare scores; redundancy fields are left at zero.
DistributionStats distribution_stats(const std::vector<Fraction>& scores);

struct HistogramBin {
  Fraction start;
  Fraction end;
  std::size_t count = 0;
};

/// Half-open bins [i*w, (i+1)*w); the last bin is closed at 1.
/// Throws InvalidArgument unless 0 < bin_width <= 1.
std::vector<HistogramBin> histogram(const std::vector<Fraction>& scores, Fraction bin_width);
std::vector<HistogramBin> histogram(const std::vector<ScoredUsage>& scores, Fraction bin_width);

}  // namespace dmmc
