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

#include "xray/url.h"

#include <algorithm>
#include <cctype>
#include <vector>

namespace xray {

namespace {

bool IsSchemeChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
         c == '.';
}

bool IsHostChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  // Bytes >= 0x80 are UTF-8 pieces of internationalized labels; they are
  // carried through opaquely.
  return std::isalnum(u) || c == '-' || c == '.' || c == '_' || u >= 0x80;
}

// Length of a leading "scheme:" in |text|, or 0 when there is none.
size_t SchemeLength(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) {
    return 0;
  }
  for (size_t i = 1; i < text.size(); ++i) {
    if (text[i] == ':') return i;
    if (!IsSchemeChar(text[i])) return 0;
  }
  return 0;
}

std::string RemoveDotSegments(std::string_view path) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  const bool absolute = !path.empty() && path[0] == '/';
  if (absolute) pos = 1;
  bool trailing_slash = false;
  while (pos <= path.size()) {
    const size_t next = path.find('/', pos);
    const std::string_view segment =
        path.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                        : next - pos);
    const bool last = next == std::string_view::npos;
    if (segment == ".") {
      trailing_slash = last;
    } else if (segment == "..") {
      if (!out.empty()) out.pop_back();
      trailing_slash = last;
    } else {
      out.push_back(segment);
      trailing_slash = false;
    }
    if (last) break;
    pos = next + 1;
  }
  std::string result = absolute ? "/" : "";
  for (size_t i = 0; i < out.size(); ++i) {
    if (i > 0) result += '/';
    result += out[i];
  }
  if (trailing_slash && (result.empty() || result.back() != '/')) {
    result += '/';
  }
  return result;
}

}  // namespace

bool IsIpAddress(std::string_view host) {
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    return true;
  }
  if (host.find(':') != std::string_view::npos) {
    return std::all_of(host.begin(), host.end(), [](char c) {
      return std::isxdigit(static_cast<unsigned char>(c)) || c == ':' ||
             c == '.';
    });
  }
  int parts = 0;
  size_t pos = 0;
  while (pos <= host.size()) {
    size_t next = host.find('.', pos);
    if (next == std::string_view::npos) next = host.size();
    const std::string_view part = host.substr(pos, next - pos);
    if (part.empty() || part.size() > 3) return false;
    int value = 0;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      value = value * 10 + (c - '0');
    }
    if (value > 255) return false;
    ++parts;
    pos = next + 1;
  }
  return parts == 4;
}

std::string Url::WithoutFragment() const {
  return scheme + "://" + authority + path + query;
}

std::string Url::Origin() const { return scheme + "://" + authority; }

std::optional<Url> ParseAbsoluteUrl(std::string_view text) {
  const size_t scheme_len = SchemeLength(text);
  if (scheme_len == 0 || text.substr(scheme_len, 3) != "://") {
    return std::nullopt;
  }
  Url url;
  url.scheme = std::string(text.substr(0, scheme_len));
  std::string_view rest = text.substr(scheme_len + 3);

  const size_t authority_end = rest.find_first_of("/?#");
  url.authority = std::string(rest.substr(0, authority_end));
  rest = authority_end == std::string_view::npos ? std::string_view{}
                                                 : rest.substr(authority_end);

  const size_t fragment_pos = rest.find('#');
  if (fragment_pos != std::string_view::npos) {
    url.fragment = std::string(rest.substr(fragment_pos));
    rest = rest.substr(0, fragment_pos);
  }
  const size_t query_pos = rest.find('?');
  if (query_pos != std::string_view::npos) {
    url.query = std::string(rest.substr(query_pos));
    rest = rest.substr(0, query_pos);
  }
  url.path = std::string(rest);

  std::string_view host_port = url.authority;
  if (const size_t at = host_port.rfind('@'); at != std::string_view::npos) {
    host_port.remove_prefix(at + 1);
  }
  std::string_view host = host_port;
  std::string_view port;
  if (!host_port.empty() && host_port.front() == '[') {
    const size_t close = host_port.find(']');
    if (close == std::string_view::npos) return std::nullopt;
    host = host_port.substr(0, close + 1);
    const std::string_view tail = host_port.substr(close + 1);
    if (!tail.empty()) {
      if (tail.front() != ':') return std::nullopt;
      port = tail.substr(1);
    }
  } else {
    if (const size_t colon = host_port.rfind(':');
        colon != std::string_view::npos) {
      host = host_port.substr(0, colon);
      port = host_port.substr(colon + 1);
    }
    for (char c : host) {
      if (!IsHostChar(c)) return std::nullopt;
    }
  }
  for (char c : port) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  if (!host.empty() && host.back() == '.') host.remove_suffix(1);
  if (host.empty()) return std::nullopt;
  url.host = ToLowerAscii(host);
  url.port = std::string(port);
  return url;
}

std::optional<std::string> ResolveUrl(const Url& base,
                                      std::string_view reference) {
  reference = TrimWhitespace(reference);
  if (SchemeLength(reference) > 0) return std::string(reference);
  if (reference.substr(0, 2) == "//") return base.scheme + ":" + std::string(reference);
  if (reference.empty()) return base.WithoutFragment();
  if (reference.front() == '#') {
    return base.WithoutFragment() + std::string(reference);
  }
  if (reference.front() == '?') {
    return base.Origin() + (base.path.empty() ? "/" : base.path) +
           std::string(reference);
  }
  std::string_view ref_path = reference;
  std::string_view tail;
  if (const size_t cut = reference.find_first_of("?#");
      cut != std::string_view::npos) {
    ref_path = reference.substr(0, cut);
    tail = reference.substr(cut);
  }
  std::string merged;
  if (ref_path.front() == '/') {
    merged = std::string(ref_path);
  } else {
    const std::string& base_path = base.path.empty() ? "/" : base.path;
    merged = base_path.substr(0, base_path.rfind('/') + 1) +
             std::string(ref_path);
  }
  return base.Origin() + RemoveDotSegments(merged) + std::string(tail);
}

}  // namespace xray
