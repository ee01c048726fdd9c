#include "dmmc/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dmmc/error.hpp"

namespace dmmc {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(kWhitespace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kWhitespace);
  return s.substr(first, last - first + 1);
}

bool has_any(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

std::vector<std::string> split_calls(std::string_view field) {
  std::vector<std::string> calls;
  std::size_t start = 0;
  while (start <= field.size()) {
    auto comma = field.find(',', start);
    if (comma == std::string_view::npos) comma = field.size();
    const auto name = trim(field.substr(start, comma - start));
    if (!name.empty()) calls.emplace_back(name);
    start = comma + 1;
  }
  return calls;
}

// Trims, validates and sorts one usage in place. Throws InvalidArgument.
void canonicalize(TypeUsage& u) {
  u.type_name = std::string(trim(u.type_name));
  u.context = std::string(trim(u.context));
  if (u.type_name.empty()) throw InvalidArgument("empty type name");
  if (u.context.empty()) throw InvalidArgument("empty context");
  if (has_any(u.id, "\t\n\r")) throw InvalidArgument("id contains a tab or newline");
  if (has_any(u.type_name, "\t\n\r")) throw InvalidArgument("type name contains a tab or newline");
  if (has_any(u.context, "\t\n\r")) throw InvalidArgument("context contains a tab or newline");
  if (u.origin && has_any(*u.origin, "\t\n\r")) {
    throw InvalidArgument("origin contains a tab or newline");
  }

  std::vector<std::string> calls;
  calls.reserve(u.calls.size());
  for (const auto& c : u.calls) {
    const auto name = trim(c);
    if (name.empty()) continue;
    if (has_any(name, ",\t\n\r")) {
      throw InvalidArgument("method name '" + std::string(name) + "' contains a separator");
    }
    calls.emplace_back(name);
  }
  std::sort(calls.begin(), calls.end());
  calls.erase(std::unique(calls.begin(), calls.end()), calls.end());
  u.calls = std::move(calls);
}

std::string auto_id(std::size_t ordinal) { return "u" + std::to_string(ordinal); }

std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& table, const std::string& s) {
  const auto next = static_cast<std::uint32_t>(table.size());
  return table.try_emplace(s, next).first->second;
}

// Records read from a file, with the physical line each came from. Ids are
// resolved here so duplicate errors can name both lines.
struct Record {
  TypeUsage usage;
  std::size_t line = 0;
};

Corpus build_from_records(std::vector<Record> records) {
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& u = records[i].usage;
    if (u.id.empty()) continue;
    auto [it, inserted] = seen.try_emplace(u.id, records[i].line);
    if (!inserted) {
      throw ParseError(records[i].line, "duplicate id '" + u.id + "' (first defined on line " +
                                            std::to_string(it->second) + ")");
    }
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& u = records[i].usage;
    if (!u.id.empty()) continue;
    u.id = auto_id(i + 1);
    auto [it, inserted] = seen.try_emplace(u.id, records[i].line);
    if (!inserted) {
      throw ParseError(records[i].line, "auto-assigned id '" + u.id +
                                            "' collides with the id defined on line " +
                                            std::to_string(it->second));
    }
  }
  std::vector<TypeUsage> usages;
  usages.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      canonicalize(records[i].usage);
    } catch (const InvalidArgument& e) {
      throw ParseError(records[i].line, e.what());
    }
    usages.push_back(std::move(records[i].usage));
  }
  return Corpus(std::move(usages));
}

}  // namespace

Corpus::Corpus(std::vector<TypeUsage> usages) : usages_(std::move(usages)) {
  const std::size_t n = usages_.size();
  if (n > std::numeric_limits<UsageIndex>::max()) {
    throw InvalidArgument("corpus too large");
  }
  keys_.reserve(n);
  call_ids_.reserve(n);
  id_index_.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    auto& u = usages_[i];
    canonicalize(u);

    if (u.id.empty()) u.id = auto_id(i + 1);
    if (!id_index_.try_emplace(u.id, static_cast<UsageIndex>(i)).second) {
      throw InvalidArgument("duplicate id '" + u.id + "'");
    }

    const Key key{intern(type_ids_, u.type_name), intern(context_ids_, u.context)};
    keys_.push_back(key);

    std::vector<MethodId> ids;
    ids.reserve(u.calls.size());
    for (const auto& c : u.calls) {
      const auto [it, inserted] = method_ids_.try_emplace(c, static_cast<MethodId>(method_names_.size()));
      if (inserted) method_names_.push_back(c);
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    call_ids_.push_back(std::move(ids));

    buckets_[pack(key)].push_back(static_cast<UsageIndex>(i));
    by_type_[key.type].push_back(static_cast<UsageIndex>(i));
  }
}

std::optional<UsageIndex> Corpus::find(std::string_view id) const {
  const auto it = id_index_.find(std::string(id));
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

UsageIndex Corpus::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw UnknownId(std::string(id));
}

std::optional<MethodId> Corpus::method_id(std::string_view name) const {
  const auto it = method_ids_.find(std::string(name));
  if (it == method_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const UsageIndex> Corpus::bucket_members(std::string_view type_name,
                                                   std::string_view context) const {
  const auto t = type_ids_.find(std::string(type_name));
  const auto c = context_ids_.find(std::string(context));
  if (t == type_ids_.end() || c == context_ids_.end()) return {};
  const auto it = buckets_.find(pack({t->second, c->second}));
  if (it == buckets_.end()) return {};
  return it->second;
}

std::span<const UsageIndex> Corpus::bucket_members_of(UsageIndex i) const {
  return buckets_.at(pack(keys_.at(i)));
}

std::span<const UsageIndex> Corpus::type_members(std::string_view type_name) const {
  const auto t = type_ids_.find(std::string(type_name));
  if (t == type_ids_.end()) return {};
  return by_type_.at(t->second);
}

std::span<const UsageIndex> Corpus::type_members_of(UsageIndex i) const {
  return by_type_.at(keys_.at(i).type);
}

std::vector<std::string> Corpus::bucket(std::string_view type_name, std::string_view context) const {
  std::vector<std::string> ids;
  for (const auto i : bucket_members(type_name, context)) ids.push_back(usages_[i].id);
  return ids;
}

std::size_t Corpus::redundant_count() const {
  std::size_t n = 0;
  for (const auto& [key, members] : buckets_) {
    if (members.size() >= 2) n += members.size();
  }
  return n;
}

Corpus parse_corpus(std::istream& in) {
  std::vector<Record> records;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 4 && fields.size() != 5) {
      throw ParseError(line_no, "expected 4 or 5 tab-separated fields, found " +
                                    std::to_string(fields.size()));
    }

    Record rec;
    rec.line = line_no;
    rec.usage.id = std::string(trim(fields[0]));
    rec.usage.type_name = std::string(trim(fields[1]));
    rec.usage.context = std::string(trim(fields[2]));
    if (rec.usage.type_name.empty()) throw ParseError(line_no, "empty type name");
    if (rec.usage.context.empty()) throw ParseError(line_no, "empty context");
    rec.usage.calls = split_calls(fields[3]);
    if (fields.size() == 5 && !fields[4].empty()) rec.usage.origin = std::string(fields[4]);
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError("read error");
  return build_from_records(std::move(records));
}

Corpus parse_corpus(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in);
}

Corpus parse_corpus_jsonl(std::istream& in) {
  using nlohmann::json;
  std::vector<Record> records;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (trim(raw).empty()) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");

    auto string_field = [&](const char* key, bool required) -> std::string {
      const auto it = obj.find(key);
      if (it == obj.end() || it->is_null()) {
        if (required) throw ParseError(line_no, std::string("missing key '") + key + "'");
        return {};
      }
      if (!it->is_string()) throw ParseError(line_no, std::string("key '") + key + "' must be a string");
      return it->get<std::string>();
    };

    Record rec;
    rec.line = line_no;
    rec.usage.id = std::string(trim(string_field("id", false)));
    rec.usage.type_name = std::string(trim(string_field("type", true)));
    rec.usage.context = std::string(trim(string_field("context", true)));
    if (rec.usage.type_name.empty()) throw ParseError(line_no, "empty type name");
    if (rec.usage.context.empty()) throw ParseError(line_no, "empty context");

    const auto calls = obj.find("calls");
    if (calls != obj.end() && !calls->is_null()) {
      if (calls->is_string()) {
        rec.usage.calls = split_calls(calls->get<std::string>());
      } else if (calls->is_array()) {
        for (const auto& c : *calls) {
          if (!c.is_string()) throw ParseError(line_no, "calls must contain strings");
          rec.usage.calls.push_back(c.get<std::string>());
        }
      } else {
        throw ParseError(line_no, "calls must be an array or a string");
      }
    }
    auto origin = string_field("origin", false);
    if (!origin.empty()) rec.usage.origin = std::move(origin);
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError("read error");
  return build_from_records(std::move(records));
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file '" + path + "'");
  const bool jsonl = path.size() >= 6 && path.compare(path.size() - 6, 6, ".jsonl") == 0;
  return jsonl ? parse_corpus_jsonl(in) : parse_corpus(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& u : corpus.usages()) {
    out << u.id << '\t' << u.type_name << '\t' << u.context << '\t';
    for (std::size_t i = 0; i < u.calls.size(); ++i) {
      if (i) out << ',';
      out << u.calls[i];
    }
    if (u.origin) out << '\t' << *u.origin;
    out << '\n';
  }
}

std::string write_corpus(const Corpus& corpus) {
  std::ostringstream out;
  write_corpus(corpus, out);
  return std::move(out).str();
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& u : corpus.usages()) {
    nlohmann::ordered_json obj;
    obj["id"] = u.id;
    obj["type"] = u.type_name;
    obj["context"] = u.context;
    obj["calls"] = u.calls;
    if (u.origin) obj["origin"] = *u.origin;
    out << obj.dump() << '\n';
  }
}

}  // namespace dmmc
