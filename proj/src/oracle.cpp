#include "dmmc/oracle.hpp"

#include <algorithm>
#include <set>

#include "dmmc/error.hpp"

namespace dmmc {

namespace {

using CallSet = std::set<std::string>;

void check_cap(const Corpus& corpus, std::size_t cap) {
  if (corpus.size() > cap) {
    throw InvalidArgument("oracle limited to " + std::to_string(cap) + " usages, corpus has " +
                          std::to_string(corpus.size()));
  }
}

bool same_site(const TypeUsage& x, const std::string& type, const std::string& context,
               const SimilarityParams& p) {
  return x.type_name == type && (!p.use_context || x.context == context);
}

OracleEntry scan(const Corpus& corpus, const std::string& type, const std::string& context,
                 const CallSet& calls, const std::string* skip_id, const SimilarityParams& p) {
  OracleEntry entry;
  for (const auto& y : corpus.usages()) {
    if (skip_id && y.id == *skip_id) continue;
    if (!same_site(y, type, context, p)) continue;
    const CallSet other(y.calls.begin(), y.calls.end());
    if (other == calls) {
      ++entry.e_count;
      continue;
    }
    const bool strict_superset =
        other.size() > calls.size() && std::includes(other.begin(), other.end(), calls.begin(), calls.end());
    if (strict_superset && other.size() - calls.size() <= static_cast<std::size_t>(p.k)) {
      entry.a_ids.push_back(y.id);
    }
  }
  return entry;
}

}  // namespace

std::vector<OracleEntry> brute_force_oracle(const Corpus& corpus, const SimilarityParams& p, std::size_t cap) {
  p.validate();
  check_cap(corpus, cap);
  std::vector<OracleEntry> out;
  out.reserve(corpus.size());
  for (const auto& x : corpus.usages()) {
    const CallSet calls(x.calls.begin(), x.calls.end());
    out.push_back(scan(corpus, x.type_name, x.context, calls, &x.id, p));
  }
  return out;
}

OracleEntry brute_force_query(const Corpus& corpus, const Query& q, const SimilarityParams& p, std::size_t cap) {
  p.validate();
  check_cap(corpus, cap);
  const CallSet calls(q.calls.begin(), q.calls.end());
  return scan(corpus, q.type_name, q.context, calls, q.exclude_id ? &*q.exclude_id : nullptr, p);
}

}  // namespace dmmc
