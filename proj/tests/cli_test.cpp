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

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "esr/transcript_json.hpp"

using namespace esr;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string &name) {
    return ::testing::TempDir() + "esr_cli_" + name;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string &haystack, const std::string &needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(CliExchange, writes_a_successful_transcript) {
    const std::string path = temp_path("ex.json");
    const Result r = run_cli({"exchange", "--ib", "1011", "--ic", "01", "--backend", "analytic", "--seed", "7",
                              "--out", path});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "shots=1 success=1"));
    const Transcript t = transcript_from_json(load_document(path));
    EXPECT_TRUE(t.success);
    EXPECT_EQ(t.seed, 7u);
    std::remove(path.c_str());
}

TEST(CliExchange, empty_secrets_are_a_usage_error) {
    const Result r = run_cli({"exchange", "--ib", "", "--ic", ""});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_TRUE(contains(r.err, "at least one secret must be non-empty"));
}

TEST(CliExchange, bad_flags_name_the_flag) {
    Result r = run_cli({"exchange", "--ib", "102", "--ic", "1"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_TRUE(contains(r.err, "--ib"));
    r = run_cli({"exchange", "--ib", "1", "--ic", "1", "--backend", "gpu"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_TRUE(contains(r.err, "--backend"));
    r = run_cli({"frobnicate"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    r = run_cli({});
    EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(CliExchange, full_backend_many_shots) {
    const Result r = run_cli({"exchange", "--ib", "1", "--ic", "1", "--backend", "full", "--shots", "1000", "--seed",
                              "1"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "success=1000"));
}

TEST(CliExchange, identical_flags_give_identical_bytes) {
    const std::string p1 = temp_path("d1.json");
    const std::string p2 = temp_path("d2.json");
    for (const std::string &backend : {"full", "reduced", "analytic"}) {
        for (const std::string &p : {p1, p2}) {
            ASSERT_EQ(run_cli({"exchange", "--ib", "101", "--ic", "1", "--backend", backend, "--seed", "42", "--shots",
                               "5", "--out", p})
                          .code,
                      cli::kExitOk);
        }
        EXPECT_EQ(read_file(p1), read_file(p2));
        EXPECT_FALSE(read_file(p1).empty());
    }
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST(CliExchange, secrets_from_files_and_redaction) {
    const std::string ib = temp_path("ib.txt");
    const std::string out = temp_path("red.json");
    std::ofstream(ib) << "110\n";
    const Result r = run_cli({"exchange", "--ib-file", ib, "--ic", "0", "--redact", "--out", out});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    const nlohmann::json doc = load_document(out);
    EXPECT_EQ(doc["len_ib"], 3);
    EXPECT_FALSE(doc.contains("secrets"));
    EXPECT_FALSE(doc.contains("private"));
    std::remove(ib.c_str());
    std::remove(out.c_str());
}

TEST(CliExchange, qubit_cap_from_the_environment) {
    ::setenv("ESR_QUBIT_CAP", "6", 1);
    const Result r = run_cli({"exchange", "--ib", "11", "--ic", "0", "--backend", "reduced"});
    ::unsetenv("ESR_QUBIT_CAP");
    EXPECT_EQ(r.code, cli::kExitResource);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliDist, n1_has_four_rows) {
    for (const std::string &backend : {"statevector", "analytic"}) {
        const Result r = run_cli({"dist", "--i", "1", "--backend", backend});
        EXPECT_EQ(r.code, cli::kExitOk) << r.err;
        EXPECT_EQ(r.out,
                  "a b c probability\n"
                  "0 0 1 0.2500000000\n"
                  "0 1 0 0.2500000000\n"
                  "1 0 0 0.2500000000\n"
                  "1 1 1 0.2500000000\n");
    }
}

TEST(CliDist, n2_zero_secret_has_sixteen_equal_rows) {
    const Result r = run_cli({"dist", "--i", "00", "--backend", "statevector"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "a  b  c  probability");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_TRUE(contains(line, " 0.0625000000")) << line;
    }
    EXPECT_EQ(rows, 16);
}

TEST(CliDist, backends_agree_up_to_n3) {
    for (const std::string &variant : {"ghz3", "epr"}) {
        for (const std::string &i : {"0", "1", "01", "11", "000", "101", "110"}) {
            const Result sv = run_cli({"dist", "--i", i, "--backend", "statevector", "--variant", variant});
            const Result an = run_cli({"dist", "--i", i, "--backend", "analytic", "--variant", variant});
            ASSERT_EQ(sv.code, cli::kExitOk) << sv.err;
            ASSERT_EQ(sv.out, an.out) << variant << " i=" << i;
        }
    }
}

TEST(CliDist, rejects_oversized_or_missing_input) {
    EXPECT_EQ(run_cli({"dist"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"dist", "--i", "1111111"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"dist", "--i", ""}).code, cli::kExitUsage);
}

TEST(CliAudit, views) {
    const std::string path = temp_path("audit.json");
    ASSERT_EQ(run_cli({"exchange", "--ib", "101", "--ic", "110", "--seed", "2", "--out", path}).code, cli::kExitOk);

    Result r = run_cli({"audit", path, "--view", "alice"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "candidates=64 support=64"));
    EXPECT_TRUE(contains(r.out, "verdict=UNIFORM"));

    r = run_cli({"audit", path, "--view", "bob"});
    EXPECT_TRUE(contains(r.out, "support=1"));
    EXPECT_TRUE(contains(r.out, "\n101 110 1         1/1\n"));

    r = run_cli({"audit", path, "--view", "eavesdropper", "--leak", "b_C"});
    EXPECT_TRUE(contains(r.out, "support=8"));
    EXPECT_TRUE(contains(r.out, "verdict=NON-UNIFORM"));

    r = run_cli({"audit", path, "--view", "alice", "--json"});
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "UNIFORM");

    EXPECT_EQ(run_cli({"audit", path, "--view", "mallory"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"audit", path, "--leak", "q"}).code, cli::kExitUsage);
    std::remove(path.c_str());
}

TEST(CliAudit, large_n_is_a_resource_error) {
    const std::string path = temp_path("big.json");
    ASSERT_EQ(run_cli({"exchange", "--ib", "10101", "--ic", "1010", "--out", path}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({"audit", path}).code, cli::kExitResource);
    std::remove(path.c_str());
}

TEST(CliVerify, pass_and_named_failure) {
    const std::string path = temp_path("verify.json");
    ASSERT_EQ(run_cli({"exchange", "--ib", "1011", "--ic", "01", "--seed", "7", "--out", path}).code, cli::kExitOk);
    Result r = run_cli({"verify", path});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "verdict=PASS"));

    nlohmann::json doc = load_document(path);
    doc["public"]["b_B"] = doc["public"]["b_B"].get<std::string>().substr(1);
    std::ofstream(path) << dump_document(doc);
    r = run_cli({"verify", path});
    EXPECT_EQ(r.code, cli::kExitFailure);
    EXPECT_TRUE(contains(r.out, "check=length_consistency status=fail"));
    EXPECT_TRUE(contains(r.out, "verdict=FAIL"));

    r = run_cli({"verify", path, "--json"});
    EXPECT_EQ(r.code, cli::kExitFailure);
    EXPECT_TRUE(nlohmann::json::accept(r.out));
    std::remove(path.c_str());
}

TEST(CliVerify, malformed_and_missing_files) {
    const std::string path = temp_path("garbage.json");
    std::ofstream(path) << "[1, 2";
    EXPECT_EQ(run_cli({"verify", path}).code, cli::kExitMalformed);
    std::ofstream(path) << "{\"format_version\": 1}";
    EXPECT_EQ(run_cli({"verify", path}).code, cli::kExitMalformed);
    EXPECT_EQ(run_cli({"audit", path}).code, cli::kExitMalformed);
    EXPECT_EQ(run_cli({"verify", temp_path("does_not_exist.json")}).code, cli::kExitMalformed);
    std::remove(path.c_str());
}

TEST(CliBench, prints_a_row_per_backend) {
    const Result r = run_cli({"bench", "--n-max", "2", "--shots", "2"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "ms_per_shot"));
    EXPECT_TRUE(contains(r.out, "analytic"));
}
