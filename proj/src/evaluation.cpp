#include "dmmc/evaluation.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dmmc/error.hpp"
#include "dmmc/format.hpp"
#include "dmmc/scoring.hpp"

namespace dmmc {

namespace {

std::vector<QueryAnalysis> analyze_all(const std::vector<DegradedQuery>& queries, const Corpus& corpus,
                                       const EvalConfig& cfg) {
  std::vector<QueryAnalysis> out;
  out.reserve(queries.size());
  for (const auto& dq : queries) {
    out.push_back(analyze_query(dq, corpus, cfg.similarity, cfg.include_seed));
  }
  return out;
}

EvalReport judge_all(const std::vector<DegradedQuery>& queries, const std::vector<QueryAnalysis>& analyses,
                     const EvalConfig& cfg) {
  std::vector<QueryOutcome> outcomes;
  outcomes.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    outcomes.push_back(judge(queries[i], analyses[i], cfg.prediction));
  }
  return aggregate(outcomes, cfg);
}

std::vector<DegradedQuery> require_queries(const Corpus& corpus, const EvalConfig& cfg) {
  cfg.validate();
  auto queries = generate_degraded(corpus, cfg.include_seed);
  if (queries.empty()) {
    throw InvalidArgument(
        "no degraded queries: the corpus has no redundant usage with at least one call");
  }
  return queries;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<DegradedQuery> generate_degraded(const Corpus& corpus, bool include_seed) {
  std::vector<DegradedQuery> queries;
  for (UsageIndex i = 0; i < corpus.size(); ++i) {
    if (!corpus.is_redundant(i)) continue;
    const auto& seed = corpus.at(i);
    for (const auto& removed : seed.calls) {
      DegradedQuery dq;
      dq.seed = i;
      dq.seed_id = seed.id;
      dq.removed = removed;
      dq.query.type_name = seed.type_name;
      dq.query.context = seed.context;
      for (const auto& c : seed.calls) {
        if (c != removed) dq.query.calls.push_back(c);
      }
      if (!include_seed) dq.query.exclude_id = seed.id;
      queries.push_back(std::move(dq));
    }
  }
  return queries;
}

QueryAnalysis analyze_query(const DegradedQuery& dq, const Corpus& corpus, const SimilarityParams& p,
                            bool include_seed) {
  const auto removed = corpus.method_id(dq.removed);
  if (!removed) throw InvalidArgument("removed call '" + dq.removed + "' is unknown to the corpus");
  std::optional<UsageIndex> excluded;
  if (!include_seed) excluded = dq.seed;
  const auto q = ResolvedQuery::degraded(dq.seed, *removed, excluded, corpus);
  const auto sim = similarity(q, corpus, p);
  return {sim.e_count, sim.a_count(), likelihoods(q, sim.almost, corpus)};
}

QueryOutcome judge(const DegradedQuery& dq, const QueryAnalysis& analysis, const PredictionConfig& cfg) {
  QueryOutcome out;
  out.e_count = analysis.e_count;
  out.a_count = analysis.a_count;
  out.s_score = s_score(analysis.e_count, analysis.a_count);
  out.r_size = analysis.ranked.size();
  // Σ φ over R = Σ support / |A|, one exact division
  std::size_t total_support = 0;
  for (const auto& rec : analysis.ranked) total_support += rec.support;
  if (analysis.a_count > 0) {
    out.phi_sum = static_cast<double>(total_support) / static_cast<double>(analysis.a_count);
  }
  out.recommendations = filter_missing(analysis.ranked, cfg);
  out.size_answer = out.recommendations.size();
  out.answered = out.size_answer >= 1;
  out.correct = std::any_of(out.recommendations.begin(), out.recommendations.end(),
                            [&](const Recommendation& r) { return r.method == dq.removed; });
  out.perfect = out.correct && out.size_answer == 1;
  return out;
}

QueryOutcome run_query(const DegradedQuery& dq, const Corpus& corpus, const EvalConfig& cfg) {
  cfg.validate();
  return judge(dq, analyze_query(dq, corpus, cfg.similarity, cfg.include_seed), cfg.prediction);
}

EvalReport aggregate(const std::vector<QueryOutcome>& outcomes, const EvalConfig& cfg) {
  if (outcomes.empty()) throw InvalidArgument("cannot aggregate zero queries");
  EvalReport r;
  r.threshold = cfg.prediction.threshold;
  r.strict_comparison = cfg.prediction.strict_comparison;
  r.k = cfg.similarity.k;
  r.include_seed = cfg.include_seed;
  r.use_context = cfg.similarity.use_context;
  r.n_queries = outcomes.size();

  double precision_sum = 0.0;
  double sum_e = 0.0, sum_a = 0.0, sum_s = 0.0, sum_r = 0.0, sum_missing = 0.0;
  double sum_phi = 0.0;
  std::size_t n_phi = 0;
  for (const auto& o : outcomes) {
    if (o.answered) ++r.n_answered;
    if (o.correct) {
      ++r.n_correct;
      precision_sum += 1.0 / static_cast<double>(o.size_answer);
    }
    if (o.perfect) ++r.n_perfect;
    sum_e += static_cast<double>(o.e_count);
    sum_a += static_cast<double>(o.a_count);
    sum_s += o.s_score.to_double();
    sum_r += static_cast<double>(o.r_size);
    sum_missing += static_cast<double>(o.size_answer);
    sum_phi += o.phi_sum;
    n_phi += o.r_size;
  }

  const auto n = static_cast<double>(r.n_queries);
  r.answered = static_cast<double>(r.n_answered) / n;
  r.recall = static_cast<double>(r.n_correct) / n;
  r.perfect = static_cast<double>(r.n_perfect) / n;
  if (r.n_answered > 0) {
    const auto answered = static_cast<double>(r.n_answered);
    r.correct = static_cast<double>(r.n_correct) / answered;
    r.false_frac = static_cast<double>(r.n_answered - r.n_correct) / answered;
    r.precision = precision_sum / answered;
  }
  r.avg_e = sum_e / n;
  r.avg_a = sum_a / n;
  r.avg_s = sum_s / n;
  r.avg_r = sum_r / n;
  r.avg_missing = sum_missing / n;
  if (n_phi > 0) r.avg_phi = sum_phi / static_cast<double>(n_phi);
  return r;
}

EvalReport evaluate(const Corpus& corpus, const EvalConfig& cfg) {
  return sweep_threshold(corpus, cfg, {cfg.prediction.threshold}).front();
}

std::vector<EvalReport> sweep_threshold(const Corpus& corpus, const EvalConfig& cfg,
                                        const std::vector<Fraction>& thresholds) {
  const auto queries = require_queries(corpus, cfg);
  const auto analyses = analyze_all(queries, corpus, cfg);
  std::vector<EvalReport> reports;
  for (const auto& t : thresholds) {
    EvalConfig at = cfg;
    at.prediction.threshold = t;
    at.validate();
    reports.push_back(judge_all(queries, analyses, at));
  }
  return reports;
}

std::vector<EvalReport> sweep_k(const Corpus& corpus, const EvalConfig& cfg, const std::vector<int>& ks) {
  const auto queries = require_queries(corpus, cfg);
  std::vector<EvalReport> reports;
  for (const int k : ks) {
    EvalConfig at = cfg;
    at.similarity.k = k;
    at.validate();
    reports.push_back(judge_all(queries, analyze_all(queries, corpus, at), at));
  }
  return reports;
}

std::vector<Fraction> degraded_scores(const Corpus& corpus, const EvalConfig& cfg) {
  cfg.validate();
  std::vector<Fraction> scores;
  for (const auto& dq : generate_degraded(corpus, cfg.include_seed)) {
    const auto a = analyze_query(dq, corpus, cfg.similarity, cfg.include_seed);
    scores.push_back(s_score(a.e_count, a.a_count));
  }
  return scores;
}

std::string report_csv_row(const EvalReport& r) {
  std::ostringstream out;
  out << r.threshold.to_short_decimal() << ',' << r.k << ',' << bool_text(r.include_seed) << ','
      << bool_text(r.use_context) << ',' << r.n_queries << ',' << format_fixed(r.answered) << ','
      << format_fixed(r.correct) << ',' << format_fixed(r.false_frac) << ',' << format_fixed(r.precision)
      << ',' << format_fixed(r.recall) << ',' << format_fixed(r.perfect) << ',' << format_fixed(r.avg_e)
      << ',' << format_fixed(r.avg_a) << ',' << format_fixed(r.avg_s) << ',' << format_fixed(r.avg_r)
      << ',' << format_fixed(r.avg_phi) << ',' << format_fixed(r.avg_missing);
  return std::move(out).str();
}

void write_report_csv(const std::vector<EvalReport>& reports, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : reports) out << report_csv_row(r) << '\n';
}

void write_report_jsonl(const std::vector<EvalReport>& reports, std::ostream& out) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["t"] = r.threshold.to_short_decimal();
    row["strict"] = r.strict_comparison;
    row["k"] = r.k;
    row["include_seed"] = r.include_seed;
    row["use_context"] = r.use_context;
    row["N"] = r.n_queries;
    row["n_answered"] = r.n_answered;
    row["n_correct"] = r.n_correct;
    row["n_perfect"] = r.n_perfect;
    row["answered"] = r.answered;
    row["correct"] = opt(r.correct);
    row["false"] = opt(r.false_frac);
    row["precision"] = opt(r.precision);
    row["recall"] = r.recall;
    row["perfect"] = r.perfect;
    row["avg_e"] = r.avg_e;
    row["avg_a"] = r.avg_a;
    row["avg_s"] = r.avg_s;
    row["avg_r"] = r.avg_r;
    row["avg_phi"] = opt(r.avg_phi);
    row["avg_missing"] = r.avg_missing;
    out << row.dump() << '\n';
  }
}

}  // namespace dmmc
