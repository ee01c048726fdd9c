#pragma once

// Small hand-built corpora shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "dmmc/corpus.hpp"

namespace dmmc::fixtures {

inline TypeUsage usage(std::string id, std::string type, std::string context, std::vector<std::string> calls,
                       std::string origin = {}) {
  TypeUsage u{std::move(id), std::move(type), std::move(context), std::move(calls), std::nullopt};
  if (!origin.empty()) u.origin = std::move(origin);
  return u;
}

inline const char* kButtonContext = "Page.createButton()";

// One Button with three calls and one Text that is only constructed.
inline Corpus figure_one() {
  return Corpus({usage("u1", "Button", kButtonContext, {"<init>", "setText", "setColor"}),
                 usage("u2", "Text", kButtonContext, {"<init>"})});
}

// Three createButton() snippets: b and aBut agree, myBut adds setLink.
inline Corpus similarity_figure() {
  return Corpus({usage("b", "Button", kButtonContext, {"<init>", "setText", "setColor"}, "A.java:3"),
                 usage("aBut", "Button", kButtonContext, {"<init>", "setText", "setColor"}, "B.java:4"),
                 usage("myBut", "Button", kButtonContext, {"<init>", "setColor", "setText", "setLink"}, "C.java:4")});
}

// Five neighbours of a constructor-only Button: four add setText, one setFont.
inline Corpus likelihood_figure() {
  return Corpus({usage("a", "Button", kButtonContext, {"<init>", "setText"}),
                 usage("b", "Button", kButtonContext, {"<init>", "setText"}),
                 usage("c", "Button", kButtonContext, {"<init>", "setText"}),
                 usage("d", "Button", kButtonContext, {"<init>", "setText"}),
                 usage("e", "Button", kButtonContext, {"<init>", "setFont"})});
}

inline const char* kDialogType = "DialogPage";
inline const char* kDialogContext = "createControl(Composite)";

// 16 DialogPage usages calling setControl in createControl, plus (optionally)
// one that makes no call at all.
inline Corpus dialog_page(bool with_empty_usage) {
  std::vector<TypeUsage> usages;
  for (int i = 1; i <= 16; ++i) {
    usages.push_back(usage("page" + std::to_string(i), kDialogType, kDialogContext, {"setControl"},
                           "Page" + std::to_string(i) + ".java:10"));
  }
  if (with_empty_usage) usages.push_back(usage("mypage", kDialogType, kDialogContext, {}, "MyPage.java:5"));
  return Corpus(std::move(usages));
}

// `per_bucket` identical {a, b, c} usages in each of `buckets` buckets.
inline Corpus unanimous(int buckets = 1, int per_bucket = 10) {
  std::vector<TypeUsage> usages;
  for (int b = 0; b < buckets; ++b) {
    for (int i = 0; i < per_bucket; ++i) {
      usages.push_back(usage("", "T" + std::to_string(b), "ctx()", {"a", "b", "c"}));
    }
  }
  return Corpus(std::move(usages));
}

// One bucket holding two conventions of different sizes and a few
// one-call deviants of each, plus a second unanimous bucket.
inline Corpus two_conventions() {
  std::vector<TypeUsage> usages;
  auto add = [&](const char* type, const char* ctx, std::vector<std::string> calls) {
    usages.push_back(usage("", type, ctx, std::move(calls)));
  };
  for (int i = 0; i < 6; ++i) add("Stream", "Loader.load(File)", {"<init>", "read", "close"});
  for (int i = 0; i < 4; ++i) add("Stream", "Loader.load(File)", {"<init>", "read", "mark", "reset"});
  add("Stream", "Loader.load(File)", {"<init>", "read"});
  add("Stream", "Loader.load(File)", {"<init>", "close"});
  add("Stream", "Loader.load(File)", {"read", "mark", "reset"});
  for (int i = 0; i < 3; ++i) add("Lock", "Worker.run()", {"lock", "unlock"});
  add("Lock", "Worker.run()", {"lock"});
  add("Lock", "Other.run()", {"lock", "unlock"});
  return Corpus(std::move(usages));
}

}  // namespace dmmc::fixtures
