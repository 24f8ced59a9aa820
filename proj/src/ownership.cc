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

#include "xray/ownership.h"

#include <fstream>
#include <sstream>

#include "xray/error.h"
#include "xray/strings.h"

namespace xray {

namespace {

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kRegistryLoad, message);
}

std::string LineTag(size_t line) { return "line " + std::to_string(line); }

std::optional<std::string> NonEmpty(std::string value) {
  if (value.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::string Owner::DisplayName() const {
  return hosted_for ? ultimate_parent + "/" + *hosted_for : ultimate_parent;
}

OwnershipRegistry OwnershipRegistry::Load(std::istream& in) {
  OwnershipRegistry registry;
  std::string content;
  std::string line;
  size_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    content += line;
    content += '\n';
    const std::string_view text = TrimWhitespace(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view comment = TrimWhitespace(text.substr(1));
      if (registry.version_.empty() && comment.starts_with("version:")) {
        registry.version_ = std::string(TrimWhitespace(comment.substr(8)));
      }
      continue;
    }
    std::vector<std::string> fields = SplitCsvRecord(text);
    if (!header_seen) {
      if (fields.size() < 2 || ToLowerAscii(fields[0]) != "domain" ||
          ToLowerAscii(fields[1]) != "company") {
        Fail(LineTag(line_number) +
             ": expected header \"domain,company,parent,notes\"");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 2 || fields.size() > 4) {
      Fail(LineTag(line_number) + ": expected 2 to 4 columns");
    }
    fields.resize(4);
    OwnershipEntry entry;
    entry.line = line_number;
    entry.domain = ToLowerAscii(fields[0]);
    entry.company = fields[1];
    std::string parent = fields[2];
    if (parent.starts_with("parent=")) parent = parent.substr(7);
    entry.parent = NonEmpty(std::string(TrimWhitespace(parent)));
    entry.notes = NonEmpty(fields[3]);
    if (entry.domain.empty() || entry.company.empty()) {
      Fail(LineTag(line_number) + ": domain and company are required");
    }
    if (entry.domain.find_first_of("/: ") != std::string::npos ||
        entry.domain.front() == '.' || entry.domain.back() == '.') {
      Fail(LineTag(line_number) + ": \"" + entry.domain +
           "\" is not a registered domain");
    }
    if (entry.notes) {
      for (std::string_view token : Split(*entry.notes, ';')) {
        token = TrimWhitespace(token);
        if (token.starts_with("hosted-for=")) {
          entry.hosted_for = NonEmpty(std::string(token.substr(11)));
        }
      }
    }
    if (entry.parent) {
      if (*entry.parent == entry.company) {
        Fail(LineTag(line_number) + ": company \"" + entry.company +
             "\" names itself as parent");
      }
      const auto [it, inserted] =
          registry.parent_of_.emplace(entry.company, *entry.parent);
      if (!inserted && it->second != *entry.parent) {
        Fail(LineTag(line_number) + ": company \"" + entry.company +
             "\" has conflicting parents \"" + it->second + "\" and \"" +
             *entry.parent + "\"");
      }
    }
    const auto existing = registry.entries_.find(entry.domain);
    if (existing != registry.entries_.end()) {
      Fail("duplicate domain \"" + entry.domain + "\" on " +
           LineTag(existing->second.line) + " and " + LineTag(line_number));
    }
    registry.entries_.emplace(entry.domain, std::move(entry));
  }
  if (!header_seen) Fail("registry has no header row");

  // Every chain must terminate within the hop limit.
  for (const auto& [company, parent] : registry.parent_of_) {
    std::string current = company;
    for (int hops = 0;; ++hops) {
      const auto it = registry.parent_of_.find(current);
      if (it == registry.parent_of_.end()) break;
      if (hops >= kMaxParentHops) {
        Fail("parent chain from \"" + company + "\" is cyclic or longer than " +
             std::to_string(kMaxParentHops) + " hops");
      }
      current = it->second;
    }
  }
  if (registry.version_.empty()) {
    registry.version_ = "fnv1a64:" + Fnv1a64Hex(content);
  }
  return registry;
}

OwnershipRegistry OwnershipRegistry::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read registry: " + path);
  try {
    return Load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string OwnershipRegistry::UltimateParent(std::string_view company) const {
  std::string current(company);
  for (int hops = 0; hops < kMaxParentHops; ++hops) {
    const auto it = parent_of_.find(current);
    if (it == parent_of_.end()) break;
    current = it->second;
  }
  return current;
}

std::optional<Owner> OwnershipRegistry::Resolve(std::string_view domain) const {
  auto it = entries_.find(domain);
  // Registered domains under a private suffix (customer.akamaihd.net) fall
  // back to the entry for the suffix owner.
  while (it == entries_.end()) {
    const size_t dot = domain.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    domain.remove_prefix(dot + 1);
    if (domain.find('.') == std::string_view::npos) return std::nullopt;
    it = entries_.find(domain);
  }
  Owner owner;
  owner.company = it->second.company;
  owner.ultimate_parent = UltimateParent(owner.company);
  owner.hosted_for = it->second.hosted_for;
  return owner;
}

std::set<std::string> OwnershipRegistry::Companies() const {
  std::set<std::string> companies;
  for (const auto& [domain, entry] : entries_) {
    companies.insert(entry.company);
    companies.insert(UltimateParent(entry.company));
  }
  return companies;
}

}  // namespace xray
