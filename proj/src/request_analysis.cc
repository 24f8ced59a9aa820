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

#include "xray/request_analysis.h"

#include <array>
#include <utility>

#include "xray/error.h"
#include "xray/strings.h"
#include "xray/url.h"

namespace xray {

namespace {

constexpr std::array<std::pair<ElementType, const char*>, 7> kTypeNames = {{
    {ElementType::kImage, "image"},
    {ElementType::kJavascript, "javascript"},
    {ElementType::kCss, "css"},
    {ElementType::kFont, "font"},
    {ElementType::kJson, "json"},
    {ElementType::kDynamic, "dynamic"},
    {ElementType::kUnknown, "unknown"},
}};

ExtensionMap BuildDefault() {
  ExtensionMap map;
  for (const char* ext : {"png", "gif", "jpg", "jpeg", "webp", "svg", "ico"}) {
    map.Set(ext, ElementType::kImage);
  }
  map.Set("js", ElementType::kJavascript);
  map.Set("css", ElementType::kCss);
  for (const char* ext : {"woff", "woff2", "ttf", "otf", "eot"}) {
    map.Set(ext, ElementType::kFont);
  }
  map.Set("json", ElementType::kJson);
  for (const char* ext : {"php", "cgi", "pl", "asp", "aspx", "jsp"}) {
    map.Set(ext, ElementType::kDynamic);
  }
  return map;
}

}  // namespace

const char* ElementTypeName(ElementType type) {
  for (const auto& [value, name] : kTypeNames) {
    if (value == type) return name;
  }
  return "unknown";
}

std::optional<ElementType> ElementTypeFromName(std::string_view name) {
  for (const auto& [value, type_name] : kTypeNames) {
    if (name == type_name) return value;
  }
  return std::nullopt;
}

const ExtensionMap& ExtensionMap::Default() {
  static const ExtensionMap kDefault = BuildDefault();
  return kDefault;
}

ExtensionMap ExtensionMap::FromConfig(std::istream& in) {
  ExtensionMap map = Default();
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view text = TrimWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    const std::vector<std::string> fields = SplitCsvRecord(text);
    if (fields.size() != 2 || fields[0].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "extension map line " + std::to_string(line_number) +
                      ": expected \"extension,type\"");
    }
    const auto type = ElementTypeFromName(ToLowerAscii(fields[1]));
    if (!type) {
      throw Error(ErrorCode::kInvalidArgument,
                  "extension map line " + std::to_string(line_number) +
                      ": unknown element type \"" + fields[1] + "\"");
    }
    map.Set(ToLowerAscii(fields[0]), *type);
  }
  return map;
}

void ExtensionMap::Set(std::string extension, ElementType type) {
  types_[std::move(extension)] = type;
}

ElementType ExtensionMap::Classify(std::string_view extension) const {
  const auto it = types_.find(extension);
  return it == types_.end() ? ElementType::kUnknown : it->second;
}

ElementType ClassifyExtension(std::string_view extension,
                              const ExtensionMap& map) {
  return map.Classify(extension);
}

std::string ExtensionOf(std::string_view filename) {
  const size_t dot = filename.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return "";
  return ToLowerAscii(filename.substr(dot + 1));
}

ParsedElement ParseRequestUrl(std::string_view url,
                              const PublicSuffixRuleSet& rules,
                              const ExtensionMap& map) {
  const auto parsed = ParseAbsoluteUrl(url);
  if (!parsed) {
    throw Error(ErrorCode::kMalformedUrl,
                "not an absolute URL: " + std::string(url));
  }
  const std::string scheme = ToLowerAscii(parsed->scheme);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kMalformedUrl,
                "unsupported scheme: " + std::string(url));
  }
  ParsedElement element;
  element.full_url = parsed->WithoutFragment();
  element.host = parsed->host;
  element.registered_domain = rules.RegisteredDomain(parsed->host);
  element.element_path = parsed->path;
  const size_t slash = parsed->path.rfind('/');
  element.filename = slash == std::string::npos
                         ? parsed->path
                         : parsed->path.substr(slash + 1);
  element.args = parsed->query;
  element.extension = ExtensionOf(element.filename);
  element.element_type = map.Classify(element.extension);
  return element;
}

}  // namespace xray
