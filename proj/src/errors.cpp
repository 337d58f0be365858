// Copyright 2026 The ESR Authors
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

#include "esr/errors.hpp"

namespace esr {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::LengthMismatch:
            return "LengthMismatch";
        case ErrorCode::InvalidBitString:
            return "InvalidBitString";
        case ErrorCode::InvalidN:
            return "InvalidN";
        case ErrorCode::QubitLimitExceeded:
            return "QubitLimitExceeded";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::UnknownBlock:
            return "UnknownBlock";
        case ErrorCode::DegenerateState:
            return "DegenerateState";
        case ErrorCode::TableTooLarge:
            return "TableTooLarge";
        case ErrorCode::MalformedTranscript:
            return "MalformedTranscript";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace esr
