#pragma once

// Type-usage data model and the indexed corpus container.
//
// A type-usage is the set of methods invoked on one variable, together with
// the variable's declared type and the signature of the method whose body
// contains it. Call order, arguments and control flow are not represented.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dmmc {

/// Interned method name. Only meaningful relative to the Corpus that issued it.
using MethodId = std::uint32_t;

/// Position of a usage in Corpus::usages(). Input order is preserved.
using UsageIndex = std::uint32_t;

struct TypeUsage {
  std::string id;
  std::string type_name;
  /// Signature of the enclosing method (name plus ordered parameter types).
  std::string context;
  /// Invoked methods; a set. Kept sorted ascending and free of duplicates
  /// once the usage is part of a Corpus.
  std::vector<std::string> calls;
  std::optional<std::string> origin;

  friend bool operator==(const TypeUsage&, const TypeUsage&) = default;
};

/// Immutable collection of type-usages with a (type, context) bucket index
/// and a type-only index. Safe to share across threads once constructed.
class Corpus {
 public:
  Corpus() = default;

  /// Validates and indexes. Calls are canonicalized (trimmed, deduplicated,
  /// sorted). Empty ids are auto-assigned as "u<ordinal>", where ordinal is
  /// the 1-based position of the usage. Throws InvalidArgument on an empty
  /// type or context, on characters the line format cannot carry, and on
  /// duplicate ids.
  explicit Corpus(std::vector<TypeUsage> usages);

  std::size_t size() const noexcept { return usages_.size(); }
  bool empty() const noexcept { return usages_.empty(); }
  const std::vector<TypeUsage>& usages() const noexcept { return usages_; }
  const TypeUsage& at(UsageIndex i) const { return usages_.at(i); }

  std::optional<UsageIndex> find(std::string_view id) const;
  /// Throws UnknownId.
  UsageIndex index_of(std::string_view id) const;

  /// Ids of every usage with exactly this type and context, in input order.
  std::vector<std::string> bucket(std::string_view type_name, std::string_view context) const;

  /// Index-level views used by the analysis code. Empty span when absent.
  std::span<const UsageIndex> bucket_members(std::string_view type_name,
                                             std::string_view context) const;
  std::span<const UsageIndex> bucket_members_of(UsageIndex i) const;
  std::span<const UsageIndex> type_members(std::string_view type_name) const;
  std::span<const UsageIndex> type_members_of(UsageIndex i) const;

  /// Sorted interned call-set of usage i.
  std::span<const MethodId> call_ids(UsageIndex i) const { return call_ids_.at(i); }
  const std::string& method_name(MethodId m) const { return method_names_.at(m); }
  std::optional<MethodId> method_id(std::string_view name) const;

  /// A usage is redundant when its (type, context) bucket holds at least one other usage.
  bool is_redundant(UsageIndex i) const { return bucket_members_of(i).size() >= 2; }
  /// Throws UnknownId.
  bool is_redundant(std::string_view id) const { return is_redundant(index_of(id)); }

  std::size_t redundant_count() const;
  std::size_t bucket_count() const noexcept { return buckets_.size(); }
  std::size_t type_count() const noexcept { return type_ids_.size(); }
  std::size_t context_count() const noexcept { return context_ids_.size(); }

 private:
  struct Key {
    std::uint32_t type = 0;
    std::uint32_t context = 0;
  };

  static std::uint64_t pack(Key k) noexcept {
    return (static_cast<std::uint64_t>(k.type) << 32) | k.context;
  }

  std::vector<TypeUsage> usages_;
  std::vector<Key> keys_;
  std::vector<std::vector<MethodId>> call_ids_;

  std::unordered_map<std::string, std::uint32_t> type_ids_;
  std::unordered_map<std::string, std::uint32_t> context_ids_;
  std::unordered_map<std::string, MethodId> method_ids_;
  std::vector<std::string> method_names_;
  std::unordered_map<std::string, UsageIndex> id_index_;

  std::unordered_map<std::uint64_t, std::vector<UsageIndex>> buckets_;
  std::unordered_map<std::uint32_t, std::vector<UsageIndex>> by_type_;
};

/// Reads the tab-separated line format:
///   id <TAB> type <TAB> context <TAB> calls [<TAB> origin]
/// with comma-separated calls. '#' lines and blank lines are skipped.
/// Throws ParseError naming the line on malformed input.
Corpus parse_corpus(std::istream& in);
Corpus parse_corpus(std::string_view text);

/// Reads the JSON-lines mirror (keys: id, type, context, calls, origin).
/// `calls` may be an array of strings or a comma-separated string.
Corpus parse_corpus_jsonl(std::istream& in);

/// Loads a corpus file, choosing the JSON-lines reader for ".jsonl".
/// Throws IoError when the file cannot be opened.
Corpus load_corpus(const std::string& path);

/// Canonical line format: calls in ascending byte order, LF line endings.
void write_corpus(const Corpus& corpus, std::ostream& out);
std::string write_corpus(const Corpus& corpus);

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace dmmc
