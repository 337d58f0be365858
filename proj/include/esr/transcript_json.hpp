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

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "esr/protocol.hpp"

namespace esr {

/// Transcript document, format_version 1:
///
///   format_version, variant, backend, n, len_ib, len_ic, seed, shot,
///   public {len_announcement {len_ib, len_ic}, a_B, a_C, b_B, c_C},
///   private {a, b, c}            (omitted when redacted)
///   secrets {i_B, i_C}           (omitted when redacted)
///   reconstructed {i_B, i_C}     (omitted when redacted)
///   success
///
/// Bitstrings are msb-first; absent vectors are written as "".
nlohmann::json transcript_to_json(const Transcript &t);

/// Throws MalformedTranscript on missing keys, wrong types or bad bitstrings.
/// Length consistency is left to verify_transcript.
Transcript transcript_from_json(const nlohmann::json &doc);

/// A single object, or an array of objects for multi-shot files.
std::vector<Transcript> transcripts_from_json(const nlohmann::json &doc);

/// Pretty-printed document with a trailing newline. Key order is fixed, so
/// equal transcripts serialize to identical bytes.
std::string dump_document(const nlohmann::json &doc);

/// Reads and parses a file; MalformedTranscript if it is not JSON.
nlohmann::json load_document(const std::string &path);

}  // namespace esr
