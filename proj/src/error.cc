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

#include "xray/error.h"

namespace xray {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kMalformedUrl: return "malformed_url";
    case ErrorCode::kPslParse: return "psl_parse";
    case ErrorCode::kNoRegisteredDomain: return "no_registered_domain";
    case ErrorCode::kHarIngest: return "har_ingest";
    case ErrorCode::kRegistryLoad: return "registry_load";
    case ErrorCode::kIndicatorParse: return "indicator_parse";
    case ErrorCode::kStoreImport: return "store_import";
    case ErrorCode::kStorage: return "storage";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kDriver: return "driver";
    case ErrorCode::kEmptyInput: return "empty_input";
  }
  return "unknown";
}

}  // namespace xray
