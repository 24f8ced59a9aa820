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

#ifndef XRAY_URL_H_
#define XRAY_URL_H_

#include <optional>
#include <string>
#include <string_view>

#include "xray/strings.h"

namespace xray {

// An absolute URL split into its syntactic parts. Nothing is decoded or
// canonicalized except |host|, which is lowercased; the remaining fields are
// byte-for-byte slices of the input so that
//   scheme + "://" + authority + path + query
// reproduces the input minus its fragment.
struct Url {
  std::string scheme;     // as written, e.g. "http"
  std::string authority;  // as written, e.g. "user@Sub.Example.com:8080"
  std::string host;       // lowercase, no port, no trailing dot
  std::string port;       // digits only, possibly empty
  std::string path;       // starts with "/" or is empty
  std::string query;      // includes the leading "?", possibly empty
  std::string fragment;   // includes the leading "#", possibly empty

  std::string WithoutFragment() const;
  std::string Origin() const;
};

// Parses "<scheme>://<authority><path>[?query][#fragment]". Returns nullopt
// when the scheme or host is missing or the authority contains characters
// that cannot appear in a hostname.
std::optional<Url> ParseAbsoluteUrl(std::string_view text);

// Resolves |reference| against |base| (absolute). Handles absolute,
// scheme-relative, absolute-path and relative-path references including
// dot segments.
std::optional<std::string> ResolveUrl(const Url& base,
                                      std::string_view reference);

bool IsIpAddress(std::string_view host);

}  // namespace xray

#endif  // XRAY_URL_H_
