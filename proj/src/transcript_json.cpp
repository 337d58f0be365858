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

#include "esr/transcript_json.hpp"

#include <fstream>
#include <sstream>

#include "esr/errors.hpp"

namespace esr {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string &what) {
    throw EsrError(ErrorCode::MalformedTranscript, "malformed transcript: " + what);
}

std::string text_of(const std::optional<BitVector> &v) {
    return v ? v->to_string() : std::string();
}

const json &require(const json &obj, const char *key) {
    if (!obj.is_object()) {
        malformed(std::string("expected an object around '") + key + "'");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        malformed(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::uint64_t require_uint(const json &obj, const char *key) {
    const json &v = require(obj, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        malformed(std::string("field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::string require_string(const json &obj, const char *key) {
    const json &v = require(obj, key);
    if (!v.is_string()) {
        malformed(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

BitVector parse_bits(const std::string &text, const char *key) {
    try {
        return BitVector::parse(text);
    } catch (const EsrError &) {
        malformed(std::string("field '") + key + "' is not a bitstring");
    }
}

BitVector require_bits(const json &obj, const char *key) {
    return parse_bits(require_string(obj, key), key);
}

std::optional<BitVector> optional_bits(const json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        malformed(std::string("field '") + key + "' must be a string");
    }
    return parse_bits(it->get<std::string>(), key);
}

SecretPair require_pair(const json &obj, const char *key) {
    const json &v = require(obj, key);
    return SecretPair{require_bits(v, "i_B"), require_bits(v, "i_C")};
}

}  // namespace

json transcript_to_json(const Transcript &t) {
    json doc;
    doc["format_version"] = t.format_version;
    doc["variant"] = std::string(to_string(t.variant));
    doc["backend"] = std::string(to_string(t.backend));
    doc["n"] = t.n;
    doc["len_ib"] = t.len_ib;
    doc["len_ic"] = t.len_ic;
    doc["seed"] = t.seed;
    doc["shot"] = t.shot;
    json pub;
    pub["len_announcement"] = {{"len_ib", t.messages.lengths.len_ib}, {"len_ic", t.messages.lengths.len_ic}};
    pub["a_B"] = text_of(t.messages.a_b);
    pub["a_C"] = text_of(t.messages.a_c);
    pub["b_B"] = text_of(t.messages.b_b);
    pub["c_C"] = text_of(t.messages.c_c);
    doc["public"] = std::move(pub);
    if (t.outcomes) {
        doc["private"] = {{"a", t.outcomes->a.to_string()},
                          {"b", t.outcomes->b.to_string()},
                          {"c", t.outcomes->c.to_string()}};
    }
    if (t.secrets) {
        doc["secrets"] = {{"i_B", t.secrets->i_b.to_string()}, {"i_C", t.secrets->i_c.to_string()}};
    }
    if (t.reconstructed) {
        doc["reconstructed"] = {{"i_B", t.reconstructed->i_b.to_string()},
                                {"i_C", t.reconstructed->i_c.to_string()}};
    }
    doc["success"] = t.success;
    return doc;
}

Transcript transcript_from_json(const json &doc) {
    if (!doc.is_object()) {
        malformed("top level must be an object");
    }
    Transcript t;
    const json &version = require(doc, "format_version");
    if (!version.is_number_integer()) {
        malformed("field 'format_version' must be an integer");
    }
    t.format_version = version.get<int>();
    try {
        t.variant = parse_variant(require_string(doc, "variant"));
        t.backend = parse_backend(require_string(doc, "backend"));
    } catch (const EsrError &e) {
        if (e.code() == ErrorCode::MalformedTranscript) {
            throw;
        }
        malformed(e.what());
    }
    t.n = require_uint(doc, "n");
    t.len_ib = require_uint(doc, "len_ib");
    t.len_ic = require_uint(doc, "len_ic");
    t.seed = require_uint(doc, "seed");
    t.shot = doc.contains("shot") ? require_uint(doc, "shot") : 0;

    const json &pub = require(doc, "public");
    const json &lengths = require(pub, "len_announcement");
    t.messages.lengths = {require_uint(lengths, "len_ib"), require_uint(lengths, "len_ic")};
    t.messages.b_b = optional_bits(pub, "b_B");
    t.messages.c_c = optional_bits(pub, "c_C");
    t.messages.a_b = optional_bits(pub, "a_B");
    t.messages.a_c = optional_bits(pub, "a_C");
    if (t.variant == Variant::epr) {
        // Alice does not exist in the two-party run; "" means absent.
        for (auto *v : {&t.messages.a_b, &t.messages.a_c}) {
            if (*v && v->value().empty()) {
                v->reset();
            }
        }
    }

    if (doc.contains("private")) {
        const json &priv = doc["private"];
        t.outcomes = PrivateOutcomes{require_bits(priv, "a"), require_bits(priv, "b"), require_bits(priv, "c")};
    }
    if (doc.contains("secrets")) {
        t.secrets = require_pair(doc, "secrets");
    }
    if (doc.contains("reconstructed")) {
        t.reconstructed = require_pair(doc, "reconstructed");
    }
    const json &success = require(doc, "success");
    if (!success.is_boolean()) {
        malformed("field 'success' must be a boolean");
    }
    t.success = success.get<bool>();
    return t;
}

std::vector<Transcript> transcripts_from_json(const json &doc) {
    std::vector<Transcript> out;
    if (doc.is_array()) {
        if (doc.empty()) {
            malformed("empty transcript array");
        }
        for (const auto &item : doc) {
            out.push_back(transcript_from_json(item));
        }
    } else {
        out.push_back(transcript_from_json(doc));
    }
    return out;
}

std::string dump_document(const json &doc) {
    return doc.dump(2) + "\n";
}

json load_document(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw EsrError(ErrorCode::MalformedTranscript, "cannot open transcript '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return json::parse(buffer.str());
    } catch (const json::parse_error &e) {
        throw EsrError(ErrorCode::MalformedTranscript, "transcript '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace esr
