#include "dmmc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "dmmc/error.hpp"

namespace dmmc {

namespace {

// std distributions are implementation-defined; these keep generated corpora
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::string> sample_convention(const SyntheticSpec& spec, Rng& rng) {
  const auto size = spec.min_calls + rng.below(spec.max_calls - spec.min_calls + 1);
  // partial Fisher-Yates over the vocabulary
  std::vector<std::size_t> pool(spec.method_vocabulary);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::string> calls;
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    calls.push_back("m" + std::to_string(pool[i]));
  }
  std::sort(calls.begin(), calls.end());
  return calls;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (buckets == 0) throw InvalidArgument("generator needs at least one bucket");
  if (total_usages == 0 && usages_per_bucket == 0) throw InvalidArgument("generator needs usages");
  if (conventions_per_bucket == 0) throw InvalidArgument("generator needs at least one convention per bucket");
  if (type_vocabulary == 0) throw InvalidArgument("type vocabulary must be non-empty");
  if (!(deviance_rate >= 0.0 && deviance_rate <= 1.0)) {
    throw InvalidArgument("deviance rate must lie in [0, 1]");
  }
  if (conventions.empty()) {
    if (min_calls == 0) throw InvalidArgument("conventions need at least one call");
    if (min_calls > max_calls) throw InvalidArgument("min_calls exceeds max_calls");
    if (max_calls > method_vocabulary) throw InvalidArgument("max_calls exceeds the method vocabulary");
  } else {
    for (const auto& c : conventions) {
      if (c.empty()) throw InvalidArgument("empty convention call-set");
    }
  }
}

std::size_t SyntheticSpec::bucket_size(std::size_t bucket) const {
  if (total_usages == 0) return usages_per_bucket;
  return total_usages / buckets + (bucket < total_usages % buckets ? 1 : 0);
}

SyntheticCorpus gen_synthetic(const SyntheticSpec& spec, std::uint64_t rng_seed) {
  spec.validate();
  Rng rng(rng_seed);
  std::vector<TypeUsage> usages;
  std::vector<PlantedDeviant> deviants;

  for (std::size_t b = 0; b < spec.buckets; ++b) {
    const std::string type = "Type" + std::to_string(b % spec.type_vocabulary);
    const std::string context = "Site" + std::to_string(b / spec.type_vocabulary) + ".build(Config)";

    std::vector<std::vector<std::string>> conventions;
    for (std::size_t j = 0; j < spec.conventions_per_bucket; ++j) {
      if (spec.conventions.empty()) {
        conventions.push_back(sample_convention(spec, rng));
      } else {
        conventions.push_back(spec.conventions[(b * spec.conventions_per_bucket + j) % spec.conventions.size()]);
      }
    }

    const auto n = spec.bucket_size(b);
    std::vector<bool> deviant(n, false);
    if (spec.exact_deviants) {
      const auto count = std::min<std::size_t>(
          n, static_cast<std::size_t>(std::llround(spec.deviance_rate * static_cast<double>(n))));
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + rng.below(n - i);
        std::swap(order[i], order[j]);
        deviant[order[i]] = true;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) deviant[i] = rng.unit() < spec.deviance_rate;
    }

    for (std::size_t i = 0; i < n; ++i) {
      TypeUsage u;
      u.id = "u" + std::to_string(usages.size() + 1);
      u.type_name = type;
      u.context = context;
      u.calls = conventions[conventions.size() == 1 ? 0 : rng.below(conventions.size())];
      if (deviant[i]) {
        const auto drop = rng.below(u.calls.size());
        deviants.push_back({u.id, u.calls[drop]});
        u.calls.erase(u.calls.begin() + static_cast<std::ptrdiff_t>(drop));
      }
      u.origin = "Site" + std::to_string(b / spec.type_vocabulary) + ".java:" + std::to_string(i + 1);
      usages.push_back(std::move(u));
    }
  }
  return {Corpus(std::move(usages)), std::move(deviants)};
}

void write_truth(const std::vector<PlantedDeviant>& deviants, std::ostream& out) {
  for (const auto& d : deviants) out << d.id << '\t' << d.dropped_call << '\n';
}

}  // namespace dmmc
