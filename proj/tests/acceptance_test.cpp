// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dmmc/evaluation.hpp"
#include "dmmc/oracle.hpp"
#include "dmmc/prediction.hpp"
#include "dmmc/scoring.hpp"
#include "dmmc/similarity.hpp"
#include "dmmc/synthetic.hpp"
#include "fixtures.hpp"
#include "metrics_oracle.hpp"

namespace {

using namespace dmmc;
using Clock = std::chrono::steady_clock;

// Collects the first few failure messages of one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  std::size_t failed = 0;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. worked examples
void worked_examples(Check& c) {
  c.expect(s_score(1, 0) == Fraction::zero(), "S(1,0) != 0");
  c.expect(s_score(1, 99) == Fraction(99, 100), "S(1,99) != 0.99");
  c.expect(s_score(1, 99).to_decimal(2) == "0.99", "S(1,99) does not print as 0.99");

  const auto dialog = fixtures::dialog_page(false);
  const Query empty{fixtures::kDialogType, fixtures::kDialogContext, {}, std::nullopt};
  const auto a = almost_similar(empty, dialog);
  const auto e = exactly_similar(empty, dialog);
  c.expect(s_score(e, a.size()) == Fraction(16, 17), "dialog page S != 16/17");
  const auto recs = missing(empty, a, dialog, {Fraction(9, 10), true});
  c.expect(recs.size() == 1 && recs[0].method == "setControl" && recs[0].likelihood == Fraction::one(),
           "dialog page recommendation is not setControl with phi 1");

  const auto fig3 = fixtures::likelihood_figure();
  const Query ctor{"Button", fixtures::kButtonContext, {"<init>"}, std::nullopt};
  const auto a3 = almost_similar(ctor, fig3);
  const auto phis = likelihoods(ctor, a3, fig3);
  c.expect(phis.size() == 2 && phis[0].method == "setText" && phis[0].likelihood == Fraction(4, 5) &&
               phis[1].method == "setFont" && phis[1].likelihood == Fraction(1, 5),
           "likelihoods are not setText 0.8, setFont 0.2");
  const auto at75 = missing(ctor, a3, fig3, {Fraction(3, 4), true});
  c.expect(at75.size() == 1 && at75[0].method == "setText", "missing at 0.75 is not {setText}");

  const auto sim = fixtures::similarity_figure();
  const auto oracle = brute_force_oracle(sim);
  const auto b = sim.index_of("b");
  const auto indexed = similarity_of(b, sim);
  const auto ids = ids_of(indexed.almost, sim);
  c.expect(indexed.e_count == 2, "b and aBut are not exactly similar (index)");
  c.expect(oracle[b].e_count == 2, "b and aBut are not exactly similar (oracle)");
  c.expect(ids == std::vector<std::string>{"myBut"}, "A(b) != {myBut} (index)");
  c.expect(oracle[b].a_ids == std::vector<std::string>{"myBut"}, "A(b) != {myBut} (oracle)");
}

Corpus random_corpus(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 100), calls(0, 6), method(0, 7), type(0, 2), ctx(0, 2);
  std::vector<TypeUsage> usages;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> m;
    const int count = calls(rng);
    for (int j = 0; j < count; ++j) m.push_back("m" + std::to_string(method(rng)));
    usages.push_back(fixtures::usage("", "T" + std::to_string(type(rng)), "c" + std::to_string(ctx(rng)) + "()", m));
  }
  return Corpus(std::move(usages));
}

// 2. index vs oracle
void oracle_equivalence(Check& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  int corpora = 0;
  for (; corpora < 240; ++corpora) {
    const auto corpus = random_corpus(rng);
    for (const int k : {1, 2, 3}) {
      for (const bool ctx : {true, false}) {
        const SimilarityParams p{k, ctx};
        const auto oracle = brute_force_oracle(corpus, p);
        const auto scored = score_all(corpus, p);
        for (UsageIndex i = 0; i < corpus.size(); ++i) {
          const auto r = similarity_of(i, corpus, p);
          const auto tag = "corpus " + std::to_string(corpora) + " usage " + corpus.at(i).id + " k=" +
                           std::to_string(k) + (ctx ? "" : " no-context");
          c.expect(r.e_count == oracle[i].e_count, tag + ": E differs");
          c.expect(ids_of(r.almost, corpus) == oracle[i].a_ids, tag + ": A differs");
        }
        for (const auto& s : scored) {
          const auto& o = oracle[s.index];
          c.expect(s.s_score == s_score(o.e_count, o.a_ids.size()), "S differs for " + s.id);
        }
      }
    }
  }
  const double secs = seconds_since(start);
  c.expect(corpora >= 200, "fewer than 200 corpora");
  c.expect(secs < 10.0, "oracle comparison took " + std::to_string(secs) + " s");
}

EvalConfig eval_config(Fraction t, int k = 1, bool include_seed = false) {
  EvalConfig cfg;
  cfg.prediction = {t, true};
  cfg.similarity = {k, true};
  cfg.include_seed = include_seed;
  return cfg;
}

SyntheticSpec mixed_spec() {
  SyntheticSpec spec;
  spec.buckets = 15;
  spec.usages_per_bucket = 8;
  spec.conventions_per_bucket = 2;
  spec.min_calls = 2;
  spec.max_calls = 5;
  spec.method_vocabulary = 10;
  spec.deviance_rate = 0.25;
  return spec;
}

// 3. protocol properties
void protocol_properties(Check& c) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = gen_synthetic(mixed_spec(), seed);
    const auto r = evaluate(g.corpus, eval_config(Fraction::zero(), 1, true));
    const auto tag = "seed " + std::to_string(seed);
    c.expect(r.answered == 1.0, tag + ": ANSWERED != 1 with seed included");
    c.expect(r.correct == 1.0, tag + ": CORRECT != 1 with seed included");
    c.expect(r.recall == 1.0, tag + ": RECALL != 1 with seed included");
  }

  const auto unanimous = evaluate(fixtures::unanimous(5, 10), eval_config(Fraction(9, 10)));
  c.expect(unanimous.precision == 1.0, "unanimous PRECISION != 1");
  c.expect(unanimous.recall == 1.0, "unanimous RECALL != 1");

  const auto two = fixtures::two_conventions();
  for (const auto& [num, den] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {9, 10}}) {
    const auto r = evaluate(two, eval_config(Fraction(num, den)));
    oracle_metrics::Settings s;
    s.t_num = num;
    s.t_den = den;
    const auto m = oracle_metrics::run(two, s);
    const bool same = r.n_queries == m.n && r.n_answered == m.answered && r.n_correct == m.correct &&
                      r.answered == m.answered_frac && r.correct == m.correct_frac &&
                      r.false_frac == m.false_frac && r.precision == m.precision && r.recall == m.recall &&
                      r.avg_e == m.avg_e && r.avg_a == m.avg_a && r.avg_s == m.avg_s && r.avg_r == m.avg_r &&
                      r.avg_phi == m.avg_phi && r.avg_missing == m.avg_missing;
    c.expect(same, "two-convention metrics differ from oracle at t=" + std::to_string(num) + "/" +
                       std::to_string(den));
  }
}

// 4. sweep monotonicity
void sweep_monotonicity(Check& c) {
  std::vector<Fraction> ts;
  for (int i = 0; i <= 10; ++i) ts.emplace_back(i, 10);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = gen_synthetic(mixed_spec(), 100 + seed);
    const auto tag = "seed " + std::to_string(100 + seed);
    const auto by_t = sweep_threshold(g.corpus, eval_config(Fraction(9, 10)), ts);
    for (std::size_t i = 1; i < by_t.size(); ++i) {
      c.expect(by_t[i].answered <= by_t[i - 1].answered, tag + ": ANSWERED rose with t");
      c.expect(by_t[i].recall <= by_t[i - 1].recall, tag + ": RECALL rose with t");
    }
    const auto by_k = sweep_k(g.corpus, eval_config(Fraction(9, 10)), {1, 2, 3, 4});
    for (std::size_t i = 1; i < by_k.size(); ++i) {
      c.expect(by_k[i].avg_a >= by_k[i - 1].avg_a, tag + ": avg_a fell with k");
      c.expect(by_k[i].avg_s >= by_k[i - 1].avg_s, tag + ": avg_s fell with k");
      c.expect(by_k[i].avg_r >= by_k[i - 1].avg_r, tag + ": avg_r fell with k");
    }
  }
}

// 6. performance
std::string performance(Check& c) {
  SyntheticSpec spec;
  spec.buckets = 8000;
  spec.total_usages = 50000;
  spec.conventions_per_bucket = 2;
  spec.method_vocabulary = 40;
  spec.type_vocabulary = 200;
  spec.deviance_rate = 0.1;
  const auto g = gen_synthetic(spec, 5);
  c.expect(g.corpus.size() == 50000, "corpus size is not 50000");
  c.expect(g.corpus.bucket_count() == 8000, "bucket count is not 8000");

  const auto start = Clock::now();
  const auto scored = score_all(g.corpus);
  std::size_t warnings = 0;
  const SimilarityParams p;
  const PredictionConfig cfg;
  for (UsageIndex i = 0; i < g.corpus.size(); ++i) {
    const auto q = ResolvedQuery::of_usage(i, g.corpus);
    const auto sim = similarity(q, g.corpus, p);
    warnings += missing(q, sim.almost, g.corpus, cfg).size();
  }
  const double secs = seconds_since(start);
  c.expect(scored.size() == 50000, "not every usage was scored");
  c.expect(secs < 5.0, "scoring and prediction took " + std::to_string(secs) + " s");
  return std::to_string(secs) + " s, " + std::to_string(warnings) + " recommendations";
}

// 7. CLI determinism
void cli_determinism(Check& c) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "dmmc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto corpus = (dir / "c.tsv").string();
  {
    std::ofstream out(corpus);
    write_corpus(gen_synthetic(mixed_spec(), 9).corpus, out);
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };

  const std::vector<std::vector<std::string>> commands = {
      {"stats", corpus},
      {"stats", corpus, "--degraded", "--format", "human"},
      {"score", corpus},
      {"score", corpus, "--format", "jsonl", "--top", "20"},
      {"score", corpus, "--format", "human", "-k", "2"},
      {"predict", corpus, "--type", "Type0", "--context", "Site0.build(Config)", "--calls", "m1", "-t", "0"},
      {"eval", corpus},
      {"eval", corpus, "--sweep-t", "0,0.5,0.9", "--sweep-k", "1,2", "--format", "jsonl"},
      {"eval", corpus, "--include-seed", "--no-context"},
      {"gen", "--buckets", "20", "-p", "0.2", "--seed", "4"},
  };
  for (const auto& cmd : commands) {
    std::string outs[2], errs[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      std::vector<std::string> args = {"dmmc"};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      codes[run] = cli::run(args, out, err);
      outs[run] = out.str();
      errs[run] = err.str();
    }
    c.expect(codes[0] == 0, cmd[0] + " failed: " + errs[0]);
    c.expect(codes[0] == codes[1] && outs[0] == outs[1] && errs[0] == errs[1], cmd[0] + " output differs");
  }

  // file outputs
  for (int run = 0; run < 2; ++run) {
    const auto n = std::to_string(run);
    std::ostringstream out, err;
    cli::run({"dmmc", "gen", "--buckets", "30", "-p", "0.3", "--seed", "8", "-o", (dir / ("g" + n)).string(),
              "--truth", (dir / ("t" + n)).string()},
             out, err);
    cli::run({"dmmc", "score", corpus, "-o", (dir / ("s" + n)).string()}, out, err);
  }
  for (const char* f : {"g", "t", "s"}) {
    const auto a = slurp(dir / (std::string(f) + "0"));
    c.expect(!a.empty() || std::string(f) == "t", std::string(f) + " output is empty");
    c.expect(a == slurp(dir / (std::string(f) + "1")), std::string(f) + " file output differs");
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const std::string& name, const std::function<std::string(Check&)>& body) {
    Check c;
    std::string note;
    try {
      note = body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.failed ? "FAIL" : "PASS") << "  " << name;
    if (!note.empty()) std::cout << " (" << note << ")";
    std::cout << '\n';
    for (const auto& f : c.failures) std::cout << "        " << f << '\n';
    if (c.failed) ++failures;
  };
  auto plain = [](void (*fn)(Check&)) {
    return [fn](Check& c) {
      fn(c);
      return std::string();
    };
  };

  report("1 worked examples", plain(worked_examples));
  report("2 index matches brute-force oracle", plain(oracle_equivalence));
  report("3 degradation protocol properties", plain(protocol_properties));
  report("4 sweep monotonicity", plain(sweep_monotonicity));
  std::cout << "INFO  5 published corpus-scale tables need the external corpora; "
               "run `dmmc eval <corpus>` on them. Covered here by criteria 2-4.\n";
  report("6 performance, 50000 usages in 8000 buckets", performance);
  report("7 CLI determinism", plain(cli_determinism));

  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed\n"
                         : std::string("acceptance: all criteria passed\n"));
  return failures ? 1 : 0;
}
