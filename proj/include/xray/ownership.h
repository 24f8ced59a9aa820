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

#ifndef XRAY_OWNERSHIP_H_
#define XRAY_OWNERSHIP_H_

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace xray {

inline constexpr std::string_view kUnattributed = "unattributed";

// One registry row. |hosted_for| comes from a "hosted-for=<Company>" token in
// the notes column and marks content a host serves on behalf of someone else
// (e.g. Akamai serving Facebook images). Attribution always uses |company|.
struct OwnershipEntry {
  std::string domain;
  std::string company;
  std::optional<std::string> parent;
  std::optional<std::string> notes;
  std::optional<std::string> hosted_for;
  size_t line = 0;
};

struct Owner {
  std::string company;
  std::string ultimate_parent;
  std::optional<std::string> hosted_for;

  // Ultimate parent, plus "/<hosted_for>" when set ("Akamai/Facebook").
  std::string DisplayName() const;
};

inline constexpr int kMaxParentHops = 3;

// Curated registered-domain -> company map. Immutable once loaded.
class OwnershipRegistry {
 public:
  OwnershipRegistry() = default;

  // CSV with header "domain,company,parent,notes"; "#" lines are comments and
  // "# version: <text>" names the registry revision. Throws
  // Error(kRegistryLoad) on duplicate domains (naming both lines), parent
  // conflicts, cycles, or chains longer than kMaxParentHops.
  static OwnershipRegistry Load(std::istream& in);
  static OwnershipRegistry LoadFile(const std::string& path);

  // Registered-domain lookup. A domain with no entry of its own falls back
  // to the nearest listed parent domain, so registrations under a private
  // suffix resolve to the suffix owner. nullopt means unattributed.
  std::optional<Owner> Resolve(std::string_view domain) const;

  // End of the parent chain for a company name (the name itself when it has
  // no parent).
  std::string UltimateParent(std::string_view company) const;

  const std::map<std::string, OwnershipEntry, std::less<>>& entries() const {
    return entries_;
  }
  std::set<std::string> Companies() const;
  const std::string& version() const { return version_; }

 private:
  std::map<std::string, OwnershipEntry, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> parent_of_;
  std::string version_;
};

}  // namespace xray

#endif  // XRAY_OWNERSHIP_H_
