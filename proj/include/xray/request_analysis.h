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

#ifndef XRAY_REQUEST_ANALYSIS_H_
#define XRAY_REQUEST_ANALYSIS_H_

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "xray/public_suffix.h"

namespace xray {

enum class ElementType {
  kImage,
  kJavascript,
  kCss,
  kFont,
  kJson,
  kDynamic,
  kUnknown,
};

const char* ElementTypeName(ElementType type);
std::optional<ElementType> ElementTypeFromName(std::string_view name);

// Extension (lowercase, no dot) to element type. Anything absent is
// kUnknown.
class ExtensionMap {
 public:
  // png gif jpg jpeg webp svg ico / js / css / woff woff2 ttf otf eot /
  // json / php cgi pl asp aspx jsp.
  static const ExtensionMap& Default();

  // Lines of "extension,type" with "#" comments, applied on top of the
  // defaults. Throws Error(kInvalidArgument) on an unknown type name.
  static ExtensionMap FromConfig(std::istream& in);

  void Set(std::string extension, ElementType type);
  ElementType Classify(std::string_view extension) const;

 private:
  std::map<std::string, ElementType, std::less<>> types_;
};

ElementType ClassifyExtension(std::string_view extension,
                              const ExtensionMap& map = ExtensionMap::Default());

// A request URL split the way the census attributes it: registered domain,
// path, final segment, query and extension.
struct ParsedElement {
  std::string full_url;           // without fragment
  std::string host;
  std::string registered_domain;
  std::string element_path;       // path as sent, possibly empty
  std::string filename;           // text after the last "/" of the path
  std::string args;               // query including "?", possibly empty
  std::string extension;          // lowercase, possibly empty
  ElementType element_type = ElementType::kUnknown;

  friend bool operator==(const ParsedElement&, const ParsedElement&) = default;
};

// Throws Error(kMalformedUrl) for URLs that are not absolute http(s) URLs and
// Error(kNoRegisteredDomain) when the host is a bare public suffix.
ParsedElement ParseRequestUrl(std::string_view url,
                              const PublicSuffixRuleSet& rules,
                              const ExtensionMap& map = ExtensionMap::Default());

// Text after the last "." of |filename| (lowercased); empty when the only dot
// is the first character.
std::string ExtensionOf(std::string_view filename);

// Registered domains are compared exactly; sub-domains of the page's own
// domain are first-party.
inline bool IsThirdParty(std::string_view page_domain,
                         std::string_view request_domain) {
  return page_domain != request_domain;
}

}  // namespace xray

#endif  // XRAY_REQUEST_ANALYSIS_H_
