// Copyright 2026 The xray-census Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XRAY_PUBLIC_SUFFIX_H_
#define XRAY_PUBLIC_SUFFIX_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xray {

struct TransparentStringHash {
  using is_transparent = void;
  size_t operator()(std::string_view text) const {
    return std::hash<std::string_view>{}(text);
  }
};

enum class RuleKind { kNormal, kWildcard, kException };

// One line of the list. |labels| are stored TLD-first, so "*.kobe.jp" is
// {"jp", "kobe", "*"} and "!city.kobe.jp" is {"jp", "kobe", "city"}.
struct PublicSuffixRule {
  std::vector<std::string> labels;
  RuleKind kind = RuleKind::kNormal;
  bool is_private = false;

  std::string ToString() const;
  friend bool operator==(const PublicSuffixRule&,
                         const PublicSuffixRule&) = default;
};

struct PslOptions {
  // Rules between the BEGIN/END PRIVATE DOMAINS markers.
  bool include_private = true;
};

// Immutable after construction; lookups are safe from any number of threads.
class PublicSuffixRuleSet {
 public:
  PublicSuffixRuleSet() = default;

  // Parses public_suffix_list.dat content. Throws Error(kPslParse) naming
  // the 1-based line of the first malformed rule.
  static PublicSuffixRuleSet Parse(std::string_view text,
                                   const PslOptions& options = {});

  const std::vector<PublicSuffixRule>& rules() const { return rules_; }

  // The list's "// VERSION:" header when present, otherwise a content hash.
  const std::string& version() const { return version_; }

  // Public suffix of a lowercase hostname under exception > longest match >
  // "*" precedence. A single trailing dot is ignored. IP literals are
  // returned whole. Throws Error(kInvalidArgument) for empty hosts or empty
  // labels.
  std::string PublicSuffix(std::string_view host) const;

  // Public suffix plus one label. Throws Error(kNoRegisteredDomain) when the
  // host is itself a public suffix.
  std::string RegisteredDomain(std::string_view host) const;

  // Non-throwing variant: nullopt for bare suffixes and invalid hosts.
  std::optional<std::string> TryRegisteredDomain(std::string_view host) const;

 private:
  enum : uint8_t { kNormalBit = 1, kWildcardBit = 2, kExceptionBit = 4 };

  // Number of trailing labels that form the public suffix, or 0 for an
  // IP literal.
  size_t SuffixLabelCount(std::string_view host) const;

  std::vector<PublicSuffixRule> rules_;
  // Keyed by dotted suffix text: "com" (normal), "ck" for "*.ck", "www.ck"
  // for "!www.ck".
  std::unordered_map<std::string, uint8_t, TransparentStringHash,
                     std::equal_to<>>
      index_;
  std::string version_;
};

inline PublicSuffixRuleSet ParsePsl(std::string_view text,
                                    const PslOptions& options = {}) {
  return PublicSuffixRuleSet::Parse(text, options);
}

PublicSuffixRuleSet LoadPslFile(const std::string& path,
                                const PslOptions& options = {});

}  // namespace xray

#endif  // XRAY_PUBLIC_SUFFIX_H_
