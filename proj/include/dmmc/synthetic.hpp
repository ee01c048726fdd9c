#pragma once

// Seeded generator of planted corpora for verification and benchmarking.
//
// Each bucket is one (type, context) pair with one or more convention
// call-sets. Every usage copies a convention; a deviant copy drops one
// uniformly chosen call, and the dropped call is recorded as ground truth.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"

namespace dmmc {

struct SyntheticSpec {
  std::size_t buckets = 10;
  std::size_t usages_per_bucket = 10;
  /// When non-zero, overrides usages_per_bucket: usages are spread as evenly
  /// as possible, earlier buckets taking the remainder.
  std::size_t total_usages = 0;
  std::size_t conventions_per_bucket = 1;
  std::size_t min_calls = 2;
  std::size_t max_calls = 4;
  std::size_t method_vocabulary = 20;
  std::size_t type_vocabulary = 5;
  /// Probability that a usage drops one call.
  double deviance_rate = 0.0;
  /// Place exactly round(rate * bucket size) deviants in each bucket instead
  /// of flipping a coin per usage.
  bool exact_deviants = false;
  /// Fixed convention call-sets; when non-empty these replace the sampled
  /// ones, bucket b using conventions[(b * conventions_per_bucket + j) % size].
  std::vector<std::vector<std::string>> conventions;

  /// Throws InvalidArgument.
  void validate() const;
  std::size_t bucket_size(std::size_t bucket) const;
};

struct PlantedDeviant {
  std::string id;
  std::string dropped_call;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<PlantedDeviant> deviants;
};

SyntheticCorpus gen_synthetic(const SyntheticSpec& spec, std::uint64_t rng_seed);

/// `id<TAB>dropped_call` lines.
void write_truth(const std::vector<PlantedDeviant>& deviants, std::ostream& out);

}  // namespace dmmc
