#pragma once

// Reference evaluation of the similarity relations by literal pairwise
// comparison of the stored records. Uses none of the corpus indexes or
// interned ids, so it can stand as an independent check on them.

#include <cstddef>
#include <string>
#include <vector>

#include "dmmc/corpus.hpp"
#include "dmmc/similarity.hpp"

namespace dmmc {

struct OracleEntry {
  std::size_t e_count = 1;
  std::vector<std::string> a_ids;

  friend bool operator==(const OracleEntry&, const OracleEntry&) = default;
};

inline constexpr std::size_t kOracleDefaultCap = 1000;

/// One entry per usage, in corpus order. Throws InvalidArgument when the
/// corpus is larger than `cap`.
std::vector<OracleEntry> brute_force_oracle(const Corpus& corpus, const SimilarityParams& p = {},
                                            std::size_t cap = kOracleDefaultCap);

/// E and A of an arbitrary query by full scan.
OracleEntry brute_force_query(const Corpus& corpus, const Query& q, const SimilarityParams& p = {},
                              std::size_t cap = kOracleDefaultCap);

}  // namespace dmmc
