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

#ifndef XRAY_ERROR_H_
#define XRAY_ERROR_H_

#include <stdexcept>
#include <string>

namespace xray {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedUrl,
  kPslParse,
  kNoRegisteredDomain,
  kHarIngest,
  kRegistryLoad,
  kIndicatorParse,
  kStoreImport,
  kStorage,
  kIo,
  kDriver,
  kEmptyInput,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace xray

#endif  // XRAY_ERROR_H_
