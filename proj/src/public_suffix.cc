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

#include "xray/public_suffix.h"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>

#include "xray/error.h"
#include "xray/strings.h"
#include "xray/url.h"

namespace xray {

namespace {

[[noreturn]] void ThrowParseError(size_t line_number, std::string_view line,
                                  std::string_view why) {
  throw Error(ErrorCode::kPslParse,
              "public suffix list line " + std::to_string(line_number) + ": " +
                  std::string(why) + " in rule \"" + std::string(line) + "\"");
}

// Lowercased host with one trailing dot removed. Throws for empty labels.
std::string CanonicalHost(std::string_view host) {
  if (!host.empty() && host.back() == '.') host.remove_suffix(1);
  if (host.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty hostname");
  }
  if (host.front() == '.' || host.find("..") != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "hostname has an empty label: " + std::string(host));
  }
  return ToLowerAscii(host);
}

// Offset where the suffix made of the last |count| labels begins.
size_t SuffixStart(std::string_view host, size_t count) {
  size_t pos = host.size();
  for (size_t i = 0; i < count; ++i) {
    const size_t dot = pos == 0 ? std::string_view::npos
                                : host.rfind('.', pos - 1);
    if (dot == std::string_view::npos) return 0;
    pos = dot;
  }
  return pos + 1;
}

// RFC 3492 encoding of one label, "xn--" included. Returns nullopt for
// pure-ASCII labels and for invalid UTF-8.
std::optional<std::string> AceLabel(std::string_view label) {
  std::vector<uint32_t> code_points;
  bool ascii = true;
  for (size_t i = 0; i < label.size();) {
    const auto byte = static_cast<unsigned char>(label[i]);
    int length = byte < 0x80 ? 1 : (byte >> 5) == 0x6 ? 2
                                 : (byte >> 4) == 0xe ? 3
                                 : (byte >> 3) == 0x1e ? 4 : 0;
    if (length == 0 || i + length > label.size()) return std::nullopt;
    uint32_t cp = length == 1 ? byte : byte & (0x7f >> length);
    for (int k = 1; k < length; ++k) {
      const auto next = static_cast<unsigned char>(label[i + k]);
      if ((next & 0xc0) != 0x80) return std::nullopt;
      cp = (cp << 6) | (next & 0x3f);
    }
    if (cp >= 0x80) ascii = false;
    code_points.push_back(cp);
    i += length;
  }
  if (ascii) return std::nullopt;

  constexpr uint32_t kBase = 36, kTMin = 1, kTMax = 26, kSkew = 38,
                     kDamp = 700, kInitialBias = 72, kInitialN = 128;
  const auto digit = [](uint32_t d) {
    return static_cast<char>(d < 26 ? 'a' + d : '0' + (d - 26));
  };
  const auto adapt = [&](uint32_t delta, uint32_t points, bool first) {
    delta = first ? delta / kDamp : delta / 2;
    delta += delta / points;
    uint32_t k = 0;
    while (delta > ((kBase - kTMin) * kTMax) / 2) {
      delta /= kBase - kTMin;
      k += kBase;
    }
    return k + (kBase - kTMin + 1) * delta / (delta + kSkew);
  };

  std::string out;
  for (uint32_t cp : code_points) {
    if (cp < 0x80) out += static_cast<char>(cp);
  }
  const uint32_t basic = static_cast<uint32_t>(out.size());
  if (basic > 0) out += '-';
  uint32_t n = kInitialN, delta = 0, bias = kInitialBias, handled = basic;
  while (handled < code_points.size()) {
    uint32_t m = UINT32_MAX;
    for (uint32_t cp : code_points) {
      if (cp >= n) m = std::min(m, cp);
    }
    delta += (m - n) * (handled + 1);
    n = m;
    for (uint32_t cp : code_points) {
      if (cp < n) ++delta;
      if (cp != n) continue;
      uint32_t q = delta;
      for (uint32_t k = kBase;; k += kBase) {
        const uint32_t t = k <= bias ? kTMin : k >= bias + kTMax ? kTMax
                                                                 : k - bias;
        if (q < t) break;
        out += digit(t + (q - t) % (kBase - t));
        q = (q - t) / (kBase - t);
      }
      out += digit(q);
      bias = adapt(delta, handled + 1, handled == basic);
      delta = 0;
      ++handled;
    }
    ++delta;
    ++n;
  }
  return "xn--" + out;
}

// The ASCII-compatible spelling of a suffix with Unicode labels, or nullopt
// when it has none.
std::optional<std::string> AceSuffix(std::string_view suffix) {
  bool changed = false;
  std::string out;
  for (std::string_view label : Split(suffix, '.')) {
    if (!out.empty()) out += '.';
    if (auto ace = AceLabel(label)) {
      out += *ace;
      changed = true;
    } else {
      out += label;
    }
  }
  if (!changed) return std::nullopt;
  return out;
}

}  // namespace

std::string PublicSuffixRule::ToString() const {
  std::string text;
  if (kind == RuleKind::kException) text = "!";
  for (size_t i = labels.size(); i-- > 0;) {
    text += labels[i];
    if (i > 0) text += '.';
  }
  return text;
}

PublicSuffixRuleSet PublicSuffixRuleSet::Parse(std::string_view text,
                                               const PslOptions& options) {
  PublicSuffixRuleSet set;
  bool in_private = false;
  size_t line_number = 0;
  for (std::string_view raw_line : Split(text, '\n')) {
    ++line_number;
    const std::string_view line = TrimWhitespace(raw_line);
    if (line.empty()) continue;
    if (line.starts_with("//")) {
      if (line.find("===BEGIN PRIVATE DOMAINS===") != std::string_view::npos) {
        in_private = true;
      } else if (line.find("===END PRIVATE DOMAINS===") !=
                 std::string_view::npos) {
        in_private = false;
      } else if (set.version_.empty() && line.starts_with("// VERSION:")) {
        set.version_ = std::string(TrimWhitespace(line.substr(11)));
      }
      continue;
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        ThrowParseError(line_number, line, "embedded whitespace");
      }
    }

    PublicSuffixRule rule;
    rule.is_private = in_private;
    std::string_view body = line;
    if (body.front() == '!') {
      rule.kind = RuleKind::kException;
      body.remove_prefix(1);
    }
    const std::string lowered = ToLowerAscii(body);
    const std::vector<std::string_view> labels = Split(lowered, '.');
    for (size_t i = 0; i < labels.size(); ++i) {
      const std::string_view label = labels[i];
      if (label.empty()) ThrowParseError(line_number, line, "empty label");
      if (label.find('*') != std::string_view::npos) {
        if (label != "*") {
          ThrowParseError(line_number, line, "partial wildcard label");
        }
        if (i != 0) {
          ThrowParseError(line_number, line, "wildcard is not the leaf label");
        }
        if (rule.kind == RuleKind::kException) {
          ThrowParseError(line_number, line, "wildcard in exception rule");
        }
        rule.kind = RuleKind::kWildcard;
      }
    }
    if (rule.kind == RuleKind::kWildcard && labels.size() < 2) {
      ThrowParseError(line_number, line, "bare wildcard");
    }
    if (rule.kind == RuleKind::kException && labels.size() < 2) {
      ThrowParseError(line_number, line, "exception without a parent suffix");
    }
    if (rule.is_private && !options.include_private) continue;

    for (size_t i = labels.size(); i-- > 0;) {
      rule.labels.emplace_back(labels[i]);
    }
    std::string key;
    uint8_t bit = kNormalBit;
    switch (rule.kind) {
      case RuleKind::kNormal:
        key = lowered;
        break;
      case RuleKind::kWildcard:
        key = lowered.substr(2);
        bit = kWildcardBit;
        break;
      case RuleKind::kException:
        key = lowered;
        bit = kExceptionBit;
        break;
    }
    set.index_[key] |= bit;
    // Unicode rules also match hosts written in punycode.
    if (auto ace = AceSuffix(key)) set.index_[*ace] |= bit;
    set.rules_.push_back(std::move(rule));
  }
  if (set.version_.empty()) set.version_ = "fnv1a64:" + Fnv1a64Hex(text);
  return set;
}

size_t PublicSuffixRuleSet::SuffixLabelCount(std::string_view host) const {
  if (IsIpAddress(host)) return 0;
  const size_t label_count =
      static_cast<size_t>(std::count(host.begin(), host.end(), '.')) + 1;
  size_t longest = 1;  // the implicit "*" rule
  size_t exception = 0;
  for (size_t k = 1; k <= label_count; ++k) {
    const std::string_view suffix = host.substr(SuffixStart(host, k));
    if (const auto it = index_.find(suffix); it != index_.end()) {
      if (it->second & kExceptionBit) exception = std::max(exception, k);
      if (it->second & kNormalBit) longest = std::max(longest, k);
    }
    if (k >= 2) {
      const std::string_view parent = host.substr(SuffixStart(host, k - 1));
      if (const auto it = index_.find(parent);
          it != index_.end() && (it->second & kWildcardBit)) {
        longest = std::max(longest, k);
      }
    }
  }
  return exception > 0 ? exception - 1 : longest;
}

std::string PublicSuffixRuleSet::PublicSuffix(std::string_view host) const {
  const std::string canonical = CanonicalHost(host);
  const size_t count = SuffixLabelCount(canonical);
  if (count == 0) return canonical;
  return canonical.substr(SuffixStart(canonical, count));
}

std::string PublicSuffixRuleSet::RegisteredDomain(std::string_view host) const {
  const std::string canonical = CanonicalHost(host);
  const size_t count = SuffixLabelCount(canonical);
  if (count == 0) return canonical;
  const size_t label_count = static_cast<size_t>(std::count(
                                 canonical.begin(), canonical.end(), '.')) +
                             1;
  if (label_count <= count) {
    throw Error(ErrorCode::kNoRegisteredDomain,
                "host is a public suffix: " + canonical);
  }
  return canonical.substr(SuffixStart(canonical, count + 1));
}

std::optional<std::string> PublicSuffixRuleSet::TryRegisteredDomain(
    std::string_view host) const {
  try {
    return RegisteredDomain(host);
  } catch (const Error&) {
    return std::nullopt;
  }
}

PublicSuffixRuleSet LoadPslFile(const std::string& path,
                                const PslOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read public suffix list: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return PublicSuffixRuleSet::Parse(buffer.str(), options);
}

}  // namespace xray
