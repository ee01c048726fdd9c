#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmmc/corpus.hpp"
#include "dmmc/error.hpp"
#include "dmmc/evaluation.hpp"
#include "dmmc/format.hpp"
#include "dmmc/prediction.hpp"
#include "dmmc/scoring.hpp"
#include "dmmc/similarity.hpp"
#include "dmmc/synthetic.hpp"

namespace dmmc::cli {

namespace {

// Raised for conditions the analysis cannot proceed past (exit code 1).
class AnalysisFailure : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { csv, jsonl, human };

const std::map<std::string, OutputFormat> kFormats = {
    {"csv", OutputFormat::csv}, {"jsonl", OutputFormat::jsonl}, {"human", OutputFormat::human}};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    items.push_back(item.substr(first, last - first + 1));
  }
  return items;
}

Fraction parse_threshold(const std::string& text, const char* flag) {
  Fraction f;
  try {
    f = Fraction::parse(text);
  } catch (const InvalidArgument&) {
    throw InvalidArgument(std::string(flag) + ": not a number in [0, 1]: '" + text + "'");
  }
  if (f > Fraction::one()) throw InvalidArgument(std::string(flag) + ": must lie in [0, 1], got " + text);
  return f;
}

std::vector<Fraction> parse_threshold_list(const std::string& text, const char* flag) {
  std::vector<Fraction> out;
  for (const auto& item : split_list(text)) out.push_back(parse_threshold(item, flag));
  if (out.empty()) throw InvalidArgument(std::string(flag) + ": empty list");
  return out;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("--sweep-k: not an integer: '" + item + "'");
    }
    if (k < 1) throw InvalidArgument("--sweep-k: k must be at least 1, got " + item);
    out.push_back(k);
  }
  if (out.empty()) throw InvalidArgument("--sweep-k: empty list");
  return out;
}

// Writes to a file when a path is given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw IoError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }

  std::ostream& get() { return *stream_; }

  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct AnalysisFlags {
  int k = 1;
  bool no_context = false;
  std::string threshold = "0.9";
  bool non_strict = false;

  void attach(CLI::App& cmd, bool with_prediction) {
    cmd.add_option("-k,--k", k, "Maximum number of extra calls in almost-similar usages")
        ->capture_default_str();
    cmd.add_flag("--no-context", no_context, "Drop the context-equality condition");
    if (with_prediction) {
      cmd.add_option("-t,--t,--threshold", threshold, "Likelihood threshold for reporting a missing call")
          ->capture_default_str();
      cmd.add_flag("--ge", non_strict, "Report calls with likelihood >= threshold instead of >");
    }
  }

  SimilarityParams similarity() const {
    SimilarityParams p;
    p.k = k;
    p.use_context = !no_context;
    p.validate();
    return p;
  }

  PredictionConfig prediction() const {
    PredictionConfig cfg;
    cfg.threshold = parse_threshold(threshold, "--threshold");
    cfg.strict_comparison = !non_strict;
    return cfg;
  }
};

std::string missing_summary(const std::vector<Recommendation>& recs) {
  std::string out;
  for (const auto& r : recs) {
    if (!out.empty()) out += ';';
    out += r.method + ':' + r.likelihood.to_decimal() + ':' + std::to_string(r.support);
  }
  return out;
}

nlohmann::ordered_json recommendations_json(const std::vector<Recommendation>& recs, std::size_t a_count) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : recs) {
    arr.push_back({{"method", r.method},
                   {"likelihood", r.likelihood.to_double()},
                   {"likelihood_exact", r.likelihood.to_ratio_string()},
                   {"support", r.support},
                   {"neighbours", a_count}});
  }
  return arr;
}

void print_human_recommendations(std::ostream& out, const std::vector<Recommendation>& recs,
                                 std::size_t a_count, const char* indent) {
  for (const auto& r : recs) {
    out << indent << r.support << " of " << a_count << " similar usages also call " << r.method << " ("
        << r.likelihood.to_decimal() << ")\n";
  }
}

// ---------------------------------------------------------------------------
// stats

struct StatsOptions {
  std::string corpus;
  std::string hist_width = "0.05";
  bool degraded = false;
  bool include_seed = false;
  std::string format = "csv";
  std::string output;
  AnalysisFlags analysis;
};

void cmd_stats(const StatsOptions& o, std::ostream& out) {
  const auto width = Fraction::parse(o.hist_width);
  if (width == Fraction::zero() || width > Fraction::one()) {
    throw InvalidArgument("--hist-width must lie in (0, 1]");
  }
  const auto params = o.analysis.similarity();
  const auto format = kFormats.at(o.format);
  const auto corpus = load_corpus(o.corpus);
  if (corpus.empty()) throw AnalysisFailure("corpus is empty");

  std::vector<Fraction> scores;
  DistributionStats stats;
  if (o.degraded) {
    EvalConfig cfg;
    cfg.similarity = params;
    cfg.include_seed = o.include_seed;
    scores = degraded_scores(corpus, cfg);
    if (scores.empty()) throw AnalysisFailure("no degraded queries: the corpus has no redundant usage with calls");
    stats = distribution_stats(scores);
    stats.n_redundant = corpus.redundant_count();
    stats.frac_redundant = static_cast<double>(stats.n_redundant) / static_cast<double>(corpus.size());
  } else {
    const auto scored = score_all(corpus, params);
    for (const auto& s : scored) scores.push_back(s.s_score);
    stats = distribution_stats(scored, corpus);
  }
  const auto bins = histogram(scores, width);

  const std::vector<std::pair<std::string, std::string>> rows = {
      {"usages", std::to_string(corpus.size())},
      {"types", std::to_string(corpus.type_count())},
      {"contexts", std::to_string(corpus.context_count())},
      {"buckets", std::to_string(corpus.bucket_count())},
      {"redundant", std::to_string(stats.n_redundant)},
      {"frac_redundant", format_fixed(stats.frac_redundant)},
      {o.degraded ? "degraded_queries" : "scored", std::to_string(stats.n_usages)},
      {"median_s", stats.median_s.to_decimal()},
      {"mean_s", format_fixed(stats.mean_s)},
      {"frac_below_0_1", format_fixed(stats.frac_below_0_1)},
      {"frac_above_0_5", format_fixed(stats.frac_above_0_5)},
      {"frac_above_0_9", format_fixed(stats.frac_above_0_9)},
  };

  switch (format) {
    case OutputFormat::csv:
      out << "metric,value\n";
      for (const auto& [k, v] : rows) out << k << ',' << v << '\n';
      out << '\n' << "bin_start,bin_end,count\n";
      for (const auto& b : bins) out << b.start.to_decimal() << ',' << b.end.to_decimal() << ',' << b.count << '\n';
      break;
    case OutputFormat::jsonl: {
      nlohmann::ordered_json summary;
      for (const auto& [k, v] : rows) summary[k] = v;
      out << nlohmann::ordered_json{{"stats", summary}}.dump() << '\n';
      for (const auto& b : bins) {
        out << nlohmann::ordered_json{{"bin_start", b.start.to_double()},
                                      {"bin_end", b.end.to_double()},
                                      {"count", b.count}}
                   .dump()
            << '\n';
      }
      break;
    }
    case OutputFormat::human:
      for (const auto& [k, v] : rows) out << k << ": " << v << '\n';
      out << "histogram:\n";
      for (const auto& b : bins) {
        out << "  [" << b.start.to_decimal(2) << ", " << b.end.to_decimal(2) << (b.end == Fraction::one() ? "]" : ")")
            << ' ' << b.count << '\n';
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// score

struct ScoreOptions {
  std::string corpus;
  std::size_t top = 0;
  std::string min_score = "0";
  std::string format = "csv";
  std::string output;
  AnalysisFlags analysis;
};

void cmd_score(const ScoreOptions& o, std::ostream& out) {
  const auto params = o.analysis.similarity();
  const auto prediction = o.analysis.prediction();
  const auto min_score = parse_threshold(o.min_score, "--min-score");
  const auto format = kFormats.at(o.format);
  const auto corpus = load_corpus(o.corpus);

  const auto scored = score_all(corpus, params);
  if (format == OutputFormat::csv) out << "rank,id,type,context,s_score,e_count,a_count,missing,origin\n";

  std::size_t rank = 0;
  for (const auto& s : scored) {
    if (s.s_score < min_score) break;
    if (o.top && rank == o.top) break;
    ++rank;
    const auto& u = corpus.at(s.index);
    const auto q = ResolvedQuery::of_usage(s.index, corpus);
    const auto sim = similarity(q, corpus, params);
    const auto recs = missing(q, sim.almost, corpus, prediction);
    switch (format) {
      case OutputFormat::csv:
        out << rank << ',' << csv_field(u.id) << ',' << csv_field(u.type_name) << ',' << csv_field(u.context)
            << ',' << s.s_score.to_decimal() << ',' << s.e_count << ',' << s.a_count << ','
            << csv_field(missing_summary(recs)) << ',' << csv_field(u.origin.value_or("")) << '\n';
        break;
      case OutputFormat::jsonl: {
        nlohmann::ordered_json row{{"rank", rank},
                                   {"id", u.id},
                                   {"type", u.type_name},
                                   {"context", u.context},
                                   {"calls", u.calls},
                                   {"s_score", s.s_score.to_double()},
                                   {"s_score_exact", s.s_score.to_ratio_string()},
                                   {"e_count", s.e_count},
                                   {"a_count", s.a_count},
                                   {"missing", recommendations_json(recs, s.a_count)}};
        if (u.origin) row["origin"] = *u.origin;
        out << row.dump() << '\n';
        break;
      }
      case OutputFormat::human:
        out << '#' << rank << ' ' << u.id << "  S=" << s.s_score.to_decimal() << " ("
            << s.s_score.to_ratio_string() << ")  " << u.type_name << " in " << u.context;
        if (u.origin) out << "  [" << *u.origin << ']';
        out << '\n';
        print_human_recommendations(out, recs, s.a_count, "    ");
        break;
    }
  }
}

// ---------------------------------------------------------------------------
// predict

struct PredictOptions {
  std::string corpus;
  std::string type;
  std::string context;
  std::string calls;
  std::string format = "human";
  AnalysisFlags analysis;
};

void cmd_predict(const PredictOptions& o, std::ostream& out) {
  const auto params = o.analysis.similarity();
  const auto prediction = o.analysis.prediction();
  const auto format = kFormats.at(o.format);
  const auto corpus = load_corpus(o.corpus);

  Query query{o.type, o.context, split_list(o.calls), std::nullopt};
  const ResolvedQuery q(query, corpus);
  const auto sim = similarity(q, corpus, params);
  const auto score = s_score(sim.e_count, sim.a_count());
  const auto recs = missing(q, sim.almost, corpus, prediction);

  switch (format) {
    case OutputFormat::csv:
      out << "e_count,a_count,s_score,method,likelihood,support\n";
      for (const auto& r : recs) {
        out << sim.e_count << ',' << sim.a_count() << ',' << score.to_decimal() << ',' << csv_field(r.method)
            << ',' << r.likelihood.to_decimal() << ',' << r.support << '\n';
      }
      break;
    case OutputFormat::jsonl:
      out << nlohmann::ordered_json{{"type", o.type},
                                    {"context", o.context},
                                    {"e_count", sim.e_count},
                                    {"a_count", sim.a_count()},
                                    {"s_score", score.to_double()},
                                    {"s_score_exact", score.to_ratio_string()},
                                    {"missing", recommendations_json(recs, sim.a_count())}}
                 .dump()
          << '\n';
      break;
    case OutputFormat::human:
      out << "e_count: " << sim.e_count << '\n'
          << "a_count: " << sim.a_count() << '\n'
          << "s_score: " << score.to_decimal() << " (" << score.to_ratio_string() << ")\n";
      if (sim.almost.empty()) {
        out << "no almost-similar usages\n";
      } else if (recs.empty()) {
        out << "no missing call passes threshold " << prediction.threshold.to_short_decimal() << '\n';
      } else {
        out << "missing calls (threshold " << (prediction.strict_comparison ? "> " : ">= ")
            << prediction.threshold.to_short_decimal() << "):\n";
        print_human_recommendations(out, recs, sim.a_count(), "  ");
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  std::string corpus;
  bool include_seed = false;
  std::string sweep_t;
  std::string sweep_k;
  std::string format = "csv";
  std::string output;
  AnalysisFlags analysis;
};

void cmd_eval(const EvalOptions& o, std::ostream& out) {
  EvalConfig cfg;
  cfg.similarity = o.analysis.similarity();
  cfg.prediction = o.analysis.prediction();
  cfg.include_seed = o.include_seed;
  const auto thresholds = o.sweep_t.empty() ? std::vector<Fraction>{cfg.prediction.threshold}
                                            : parse_threshold_list(o.sweep_t, "--sweep-t");
  const auto ks = o.sweep_k.empty() ? std::vector<int>{cfg.similarity.k} : parse_k_list(o.sweep_k);
  const auto format = kFormats.at(o.format);
  if (format == OutputFormat::human) throw InvalidArgument("eval supports csv and jsonl output");

  const auto corpus = load_corpus(o.corpus);
  if (generate_degraded(corpus).empty()) {
    throw AnalysisFailure("no degraded queries (N=0): no usage shares its type and context with another "
                          "usage while making at least one call");
  }

  std::vector<EvalReport> reports;
  for (const int k : ks) {
    EvalConfig at = cfg;
    at.similarity.k = k;
    auto rows = sweep_threshold(corpus, at, thresholds);
    reports.insert(reports.end(), rows.begin(), rows.end());
  }
  if (format == OutputFormat::csv) {
    write_report_csv(reports, out);
  } else {
    write_report_jsonl(reports, out);
  }
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  SyntheticSpec spec;
  std::uint64_t seed = 1;
  std::string output;
  std::string truth;
  std::string conventions;
};

void cmd_gen(GenOptions o, std::ostream& out) {
  if (!o.conventions.empty()) {
    // "a+b+c;a+b" : conventions separated by ';', calls by '+'
    std::stringstream in(o.conventions);
    std::string item;
    while (std::getline(in, item, ';')) {
      std::vector<std::string> calls;
      std::stringstream cs(item);
      std::string call;
      while (std::getline(cs, call, '+')) {
        if (!call.empty()) calls.push_back(call);
      }
      o.spec.conventions.push_back(std::move(calls));
    }
  }
  o.spec.validate();
  const auto generated = gen_synthetic(o.spec, o.seed);

  Sink corpus_sink(o.output, out);
  write_corpus(generated.corpus, corpus_sink.get());
  corpus_sink.finish();
  if (!o.truth.empty()) {
    std::ofstream truth(o.truth, std::ios::binary | std::ios::trunc);
    if (!truth) throw IoError("cannot open truth file '" + o.truth + "'");
    write_truth(generated.deviants, truth);
    truth.flush();
    if (!truth) throw IoError("write failed for '" + o.truth + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects likely missing method calls from type-usage corpora", "dmmc"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"csv", "jsonl", "human"});

  std::function<void()> action;

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus counts and S-score distribution");
  stats_cmd->add_option("corpus", stats.corpus, "Corpus file (.tsv or .jsonl)")->required();
  stats_cmd->add_option("--hist-width", stats.hist_width, "Histogram bin width")->capture_default_str();
  stats_cmd->add_flag("--degraded", stats.degraded, "Score simulated missing-call queries instead of the usages");
  stats_cmd->add_flag("--include-seed", stats.include_seed, "With --degraded, keep the seed usage in the corpus");
  stats_cmd->add_option("--format", stats.format, "csv, jsonl or human")->check(format_check)->capture_default_str();
  stats_cmd->add_option("-o,--output", stats.output, "Write to this file instead of stdout");
  stats.analysis.attach(*stats_cmd, false);
  stats_cmd->callback([&] {
    action = [&] {
      Sink sink(stats.output, out);
      cmd_stats(stats, sink.get());
      sink.finish();
    };
  });

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Rank usages by S-score with their missing-call recommendations");
  score_cmd->add_option("corpus", score.corpus, "Corpus file (.tsv or .jsonl)")->required();
  score_cmd->add_option("--top", score.top, "Show at most N warnings (0 = all)");
  score_cmd->add_option("--min-score", score.min_score, "Only show usages scoring at least this")
      ->capture_default_str();
  score_cmd->add_option("--format", score.format, "csv, jsonl or human")->check(format_check)->capture_default_str();
  score_cmd->add_option("-o,--output", score.output, "Write to this file instead of stdout");
  score.analysis.attach(*score_cmd, true);
  score_cmd->callback([&] {
    action = [&] {
      Sink sink(score.output, out);
      cmd_score(score, sink.get());
      sink.finish();
    };
  });

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Recommend missing calls for one ad-hoc usage");
  predict_cmd->add_option("corpus", predict.corpus, "Corpus file (.tsv or .jsonl)")->required();
  predict_cmd->add_option("--type", predict.type, "Declared type of the variable")->required();
  predict_cmd->add_option("--context", predict.context, "Signature of the enclosing method")->required();
  predict_cmd->add_option("--calls", predict.calls, "Comma-separated calls made on the variable (may be empty)")
      ->required();
  predict_cmd->add_option("--format", predict.format, "csv, jsonl or human")
      ->check(format_check)
      ->capture_default_str();
  predict.analysis.attach(*predict_cmd, true);
  predict_cmd->callback([&] { action = [&] { cmd_predict(predict, out); }; });

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Simulate missing calls and measure recommendation quality");
  eval_cmd->add_option("corpus", eval.corpus, "Corpus file (.tsv or .jsonl)")->required();
  eval_cmd->add_flag("--include-seed", eval.include_seed, "Keep each seed usage while answering its own queries");
  eval_cmd->add_option("--sweep-t", eval.sweep_t, "Comma-separated thresholds, one report row each");
  eval_cmd->add_option("--sweep-k", eval.sweep_k, "Comma-separated k values, one report row each");
  eval_cmd->add_option("--format", eval.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  eval_cmd->add_option("-o,--output", eval.output, "Write to this file instead of stdout");
  eval.analysis.attach(*eval_cmd, true);
  eval_cmd->callback([&] {
    action = [&] {
      Sink sink(eval.output, out);
      cmd_eval(eval, sink.get());
      sink.finish();
    };
  });

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded synthetic corpus with planted deviants");
  gen_cmd->add_option("--buckets", gen.spec.buckets, "Number of (type, context) buckets")->capture_default_str();
  gen_cmd->add_option("--per-bucket", gen.spec.usages_per_bucket, "Usages per bucket")->capture_default_str();
  gen_cmd->add_option("--total", gen.spec.total_usages, "Total usages spread over the buckets (overrides --per-bucket)");
  gen_cmd->add_option("--conventions-per-bucket", gen.spec.conventions_per_bucket, "Convention call-sets per bucket")
      ->capture_default_str();
  gen_cmd->add_option("--conventions", gen.conventions, "Fixed conventions, e.g. 'open+read+close;open+close'");
  gen_cmd->add_option("--min-calls", gen.spec.min_calls, "Smallest sampled convention")->capture_default_str();
  gen_cmd->add_option("--max-calls", gen.spec.max_calls, "Largest sampled convention")->capture_default_str();
  gen_cmd->add_option("--methods", gen.spec.method_vocabulary, "Method vocabulary size")->capture_default_str();
  gen_cmd->add_option("--types", gen.spec.type_vocabulary, "Type vocabulary size")->capture_default_str();
  gen_cmd->add_option("-p,--deviance", gen.spec.deviance_rate, "Probability that a usage drops one call")
      ->capture_default_str();
  gen_cmd->add_flag("--exact-deviants", gen.spec.exact_deviants, "Plant round(p * size) deviants per bucket");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Corpus file (stdout when omitted)");
  gen_cmd->add_option("--truth", gen.truth, "Ground-truth file of id<TAB>dropped_call lines");
  gen_cmd->callback([&] { action = [&] { cmd_gen(gen, out); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    action();
    return kSuccess;
  } catch (const AnalysisFailure& e) {
    err << "dmmc: " << e.what() << '\n';
    return kAnalysisFailure;
  } catch (const ParseError& e) {
    err << "dmmc: parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError& e) {
    err << "dmmc: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidArgument& e) {
    err << "dmmc: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "dmmc: " << e.what() << '\n';
    return kAnalysisFailure;
  }
}

}  // namespace dmmc::cli
