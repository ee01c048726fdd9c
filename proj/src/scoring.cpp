#include "dmmc/scoring.hpp"

#include <algorithm>

#include "dmmc/error.hpp"

namespace dmmc {

Fraction s_score(std::size_t e_count, std::size_t a_count) {
  if (e_count == 0) throw InvalidArgument("S-score needs |E| >= 1");
  return Fraction(a_count, e_count + a_count);
}

std::vector<ScoredUsage> score_all(const Corpus& corpus, const SimilarityParams& p) {
  p.validate();
  std::vector<ScoredUsage> scored;
  scored.reserve(corpus.size());
  for (UsageIndex i = 0; i < corpus.size(); ++i) {
    const auto sim = similarity_of(i, corpus, p);
    scored.push_back({i, corpus.at(i).id, s_score(sim.e_count, sim.a_count()), sim.e_count, sim.a_count()});
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredUsage& a, const ScoredUsage& b) {
    if (a.s_score != b.s_score) return a.s_score > b.s_score;
    return a.id < b.id;
  });
  return scored;
}

DistributionStats distribution_stats(const std::vector<Fraction>& scores) {
  if (scores.empty()) throw InvalidArgument("distribution statistics need at least one score");
  DistributionStats st;
  st.n_usages = scores.size();

  std::vector<Fraction> sorted = scores;
  std::sort(sorted.begin(), sorted.end());
  st.median_s = sorted[(sorted.size() - 1) / 2];

  const Fraction tenth(1, 10), half(1, 2), nine_tenths(9, 10);
  double sum = 0.0;
  for (const auto& s : sorted) {
    sum += s.to_double();
    if (s < tenth) ++st.n_below_0_1;
    if (s > half) ++st.n_above_0_5;
    if (s > nine_tenths) ++st.n_above_0_9;
  }
  const auto n = static_cast<double>(st.n_usages);
  st.mean_s = sum / n;
  st.frac_below_0_1 = static_cast<double>(st.n_below_0_1) / n;
  st.frac_above_0_5 = static_cast<double>(st.n_above_0_5) / n;
  st.frac_above_0_9 = static_cast<double>(st.n_above_0_9) / n;
  return st;
}

DistributionStats distribution_stats(const std::vector<ScoredUsage>& scores, const Corpus& corpus) {
  std::vector<Fraction> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.s_score);
  auto st = distribution_stats(values);
  for (const auto& s : scores) {
    if (corpus.is_redundant(s.index)) ++st.n_redundant;
  }
  st.frac_redundant = static_cast<double>(st.n_redundant) / static_cast<double>(st.n_usages);
  return st;
}

std::vector<HistogramBin> histogram(const std::vector<Fraction>& scores, Fraction bin_width) {
  if (bin_width == Fraction::zero() || bin_width > Fraction::one()) {
    throw InvalidArgument("bin width must lie in (0, 1]");
  }
  // ceil(1 / w) bins
  const std::uint64_t n_bins = (bin_width.den() + bin_width.num() - 1) / bin_width.num();
  std::vector<HistogramBin> bins;
  bins.reserve(n_bins);
  for (std::uint64_t i = 0; i < n_bins; ++i) {
    const Fraction start(i * bin_width.num(), bin_width.den());
    const Fraction end = i + 1 == n_bins ? Fraction::one() : Fraction((i + 1) * bin_width.num(), bin_width.den());
    bins.push_back({start, end, 0});
  }
  for (const auto& s : scores) {
    if (s > Fraction::one()) throw InvalidArgument("score above 1: " + s.to_ratio_string());
    // floor(s / w) = floor(s.num * w.den / (s.den * w.num))
    const auto num = static_cast<unsigned __int128>(s.num()) * bin_width.den();
    const auto den = static_cast<unsigned __int128>(s.den()) * bin_width.num();
    const auto bin = std::min<std::uint64_t>(static_cast<std::uint64_t>(num / den), n_bins - 1);
    ++bins[bin].count;
  }
  return bins;
}

std::vector<HistogramBin> histogram(const std::vector<ScoredUsage>& scores, Fraction bin_width) {
  std::vector<Fraction> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.s_score);
  return histogram(values, bin_width);
}

}  // namespace dmmc
