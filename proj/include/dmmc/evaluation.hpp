#pragma once

// Defect-simulation harness.
//
// Every call of every redundant usage is removed in turn, giving one
// degraded query per (usage, call). Each query is answered against the
// corpus and judged on whether the removed call comes back among the
// recommendations. By default the seed usage is left out while answering
// its own queries, so the seed cannot vote for the call it lost.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"
#include "dmmc/fraction.hpp"
#include "dmmc/prediction.hpp"
#include "dmmc/similarity.hpp"

namespace dmmc {

struct DegradedQuery {
  UsageIndex seed = 0;
  std::string seed_id;
  std::string removed;
  Query query;
};

struct EvalConfig {
  PredictionConfig prediction;
  SimilarityParams similarity;
  /// Keep the seed usage in the corpus while answering its own queries.
  bool include_seed = false;

  void validate() const {
    prediction.validate();
    similarity.validate();
  }
};

/// Degraded queries in corpus order, then removed-call name order. Usages
/// alone in their (type, context) bucket and usages with no call yield none.
std::vector<DegradedQuery> generate_degraded(const Corpus& corpus, bool include_seed = false);

/// Threshold-independent part of answering one query.
struct QueryAnalysis {
  std::size_t e_count = 1;
  std::size_t a_count = 0;
  /// All of R(q) with likelihoods, ranked.
  std::vector<Recommendation> ranked;
};

struct QueryOutcome {
  bool answered = false;
  bool correct = false;
  bool perfect = false;
  std::size_t size_answer = 0;
  std::size_t e_count = 1;
  std::size_t a_count = 0;
  Fraction s_score;
  std::size_t r_size = 0;
  /// Sum of likelihoods over all of R(q), before filtering.
  double phi_sum = 0.0;
  std::vector<Recommendation> recommendations;
};

QueryAnalysis analyze_query(const DegradedQuery& dq, const Corpus& corpus, const SimilarityParams& p,
                            bool include_seed);
QueryOutcome judge(const DegradedQuery& dq, const QueryAnalysis& analysis, const PredictionConfig& cfg);
QueryOutcome run_query(const DegradedQuery& dq, const Corpus& corpus, const EvalConfig& cfg);

struct EvalReport {
  Fraction threshold;
  bool strict_comparison = true;
  int k = 1;
  bool include_seed = false;
  bool use_context = true;

  std::size_t n_queries = 0;
  std::size_t n_answered = 0;
  std::size_t n_correct = 0;
  std::size_t n_perfect = 0;

  double answered = 0.0;
  /// Fractions of answered queries; empty when nothing was answered.
  std::optional<double> correct;
  std::optional<double> false_frac;
  std::optional<double> precision;
  double recall = 0.0;
  double perfect = 0.0;

  double avg_e = 0.0;
  double avg_a = 0.0;
  double avg_s = 0.0;
  double avg_r = 0.0;
  /// Mean likelihood over every member of R across all queries; empty when
  /// no query has a candidate.
  std::optional<double> avg_phi;
  double avg_missing = 0.0;
};

/// Folds per-query outcomes into metrics. Throws InvalidArgument when empty.
EvalReport aggregate(const std::vector<QueryOutcome>& outcomes, const EvalConfig& cfg);

/// Runs the whole protocol. Throws InvalidArgument when the corpus yields no
/// degraded query (no redundant usage with at least one call).
EvalReport evaluate(const Corpus& corpus, const EvalConfig& cfg = {});

/// One report per threshold; neighbourhoods are computed once.
std::vector<EvalReport> sweep_threshold(const Corpus& corpus, const EvalConfig& cfg,
                                        const std::vector<Fraction>& thresholds);

/// One report per k; all other settings fixed.
std::vector<EvalReport> sweep_k(const Corpus& corpus, const EvalConfig& cfg, const std::vector<int>& ks);

/// S-scores of every degraded query.
std::vector<Fraction> degraded_scores(const Corpus& corpus, const EvalConfig& cfg = {});

inline constexpr const char* kReportCsvHeader =
    "t,k,include_seed,use_context,N,answered,correct,false,precision,recall,perfect,"
    "avg_e,avg_a,avg_s,avg_r,avg_phi,avg_missing";

/// One CSV row matching kReportCsvHeader; undefined metrics print as NA.
std::string report_csv_row(const EvalReport& r);
void write_report_csv(const std::vector<EvalReport>& reports, std::ostream& out);
void write_report_jsonl(const std::vector<EvalReport>& reports, std::ostream& out);

}  // namespace dmmc
