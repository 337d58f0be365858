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

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "esr/analytic.hpp"
#include "esr/audit.hpp"
#include "esr/errors.hpp"
#include "esr/protocol.hpp"
#include "esr/statevector.hpp"
#include "esr/transcript_json.hpp"

namespace esr::cli {

namespace {

/// A failure attributed to a flag or file, carrying its exit code.
struct UsageFailure {
    int code;
    std::string message;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidBitString:
        case ErrorCode::InvalidN:
        case ErrorCode::LengthMismatch:
        case ErrorCode::IndexOutOfRange:
        case ErrorCode::UnknownBlock:
            return kExitUsage;
        case ErrorCode::QubitLimitExceeded:
        case ErrorCode::TableTooLarge:
            return kExitResource;
        case ErrorCode::MalformedTranscript:
            return kExitMalformed;
        case ErrorCode::DegenerateState:
            break;
    }
    return kExitFailure;
}

[[noreturn]] void fail(int code, std::string message) {
    throw UsageFailure{code, std::move(message)};
}

BitVector parse_flag_bits(const std::string &flag, const std::string &text) {
    try {
        return BitVector::parse(text);
    } catch (const EsrError &e) {
        fail(kExitUsage, flag + ": " + e.what());
    }
}

std::string read_trimmed(const std::string &flag, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(kExitUsage, flag + ": cannot read '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

std::size_t cap_from_env() {
    try {
        return qubit_cap();
    } catch (const EsrError &e) {
        fail(kExitUsage, e.what());
    }
}

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10f", p);
    return buf;
}

std::string pad(const std::string &s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// ---------------------------------------------------------------------------
// exchange

struct ExchangeOptions {
    std::string ib;
    std::string ic;
    std::string ib_file;
    std::string ic_file;
    std::string backend = "analytic";
    std::string variant = "ghz3";
    std::uint64_t seed = 0;
    std::uint64_t shots = 1;
    std::string out_path;
    bool redact = false;
};

int cmd_exchange(const ExchangeOptions &opt, std::ostream &out) {
    ExchangeConfig config;
    config.i_b = parse_flag_bits("--ib", opt.ib_file.empty() ? opt.ib : read_trimmed("--ib-file", opt.ib_file));
    config.i_c = parse_flag_bits("--ic", opt.ic_file.empty() ? opt.ic : read_trimmed("--ic-file", opt.ic_file));
    config.backend = parse_backend(opt.backend);
    config.variant = parse_variant(opt.variant);
    config.master_seed = opt.seed;
    config.redact_private = opt.redact;
    config.qubit_cap = cap_from_env();
    if (opt.shots == 0) {
        fail(kExitUsage, "--shots: must be at least 1");
    }
    if (config.n() == 0) {
        fail(kExitUsage, "--ib/--ic: at least one secret must be non-empty");
    }
    try {
        config.validate();
    } catch (const EsrError &e) {
        fail(exit_code_for(e.code()), std::string("--backend: ") + e.what());
    }

    std::unique_ptr<std::ofstream> file;
    if (!opt.out_path.empty()) {
        file = std::make_unique<std::ofstream>(opt.out_path, std::ios::binary | std::ios::trunc);
        if (!*file) {
            fail(kExitUsage, "--out: cannot write '" + opt.out_path + "'");
        }
    }

    const auto shots = static_cast<std::int64_t>(opt.shots);
    std::vector<Transcript> transcripts(static_cast<std::size_t>(shots));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shots));
#pragma omp parallel for schedule(dynamic, 16) if (shots > 1)
    for (std::int64_t s = 0; s < shots; ++s) {
        try {
            transcripts[s] = run_exchange(config, static_cast<std::uint64_t>(s));
        } catch (...) {
            errors[s] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    std::size_t successes = 0;
    for (const auto &t : transcripts) {
        successes += t.success ? 1 : 0;
    }
    if (file) {
        nlohmann::json doc;
        if (transcripts.size() == 1) {
            doc = transcript_to_json(transcripts.front());
        } else {
            doc = nlohmann::json::array();
            for (const auto &t : transcripts) {
                doc.push_back(transcript_to_json(t));
            }
        }
        *file << dump_document(doc);
        if (!*file) {
            fail(kExitUsage, "--out: write to '" + opt.out_path + "' failed");
        }
    }
    out << "n=" << config.n() << " shots=" << opt.shots << " success=" << successes
        << " backend=" << to_string(config.backend) << " variant=" << to_string(config.variant) << "\n";
    return successes == transcripts.size() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// dist

struct DistOptions {
    std::string i;
    std::string backend = "analytic";
    std::string variant = "ghz3";
    std::string fidelity = "full";
};

int cmd_dist(const DistOptions &opt, std::ostream &out) {
    const BitVector i = parse_flag_bits("--i", opt.i);
    if (i.empty() || i.size() > kMaxExactN) {
        fail(kExitUsage, "--i: must have between 1 and " + std::to_string(kMaxExactN) + " bits");
    }
    const Variant variant = parse_variant(opt.variant);
    const Fidelity fidelity = opt.fidelity == "full" ? Fidelity::full : Fidelity::reduced;
    const std::size_t cap = cap_from_env();

    JointDistribution dist;
    if (opt.backend == "analytic") {
        dist = variant == Variant::ghz3 ? exact_distribution(i) : exact_distribution_epr(i);
    } else {
        // One broker holds the whole vector; the split does not change psi3.
        try {
            EsrCircuit circuit(i, BitVector{}, variant, fidelity, cap);
            circuit.run_to(EsrCircuit::Phase::psi3);
            std::vector<std::string> blocks;
            if (variant == Variant::ghz3) {
                blocks.emplace_back(reg::kAliceInput);
            }
            blocks.emplace_back(reg::kBobInput);
            blocks.emplace_back(reg::kCharlieInput);
            dist = circuit.state().block_marginal(blocks);
        } catch (const EsrError &e) {
            fail(exit_code_for(e.code()), std::string("--i: ") + e.what());
        }
    }

    const std::vector<std::string> names =
        variant == Variant::ghz3 ? std::vector<std::string>{"a", "b", "c"} : std::vector<std::string>{"b", "c"};
    const std::size_t width = std::max<std::size_t>(i.size(), 1) + 1;
    for (const auto &name : names) {
        out << pad(name, width);
    }
    out << "probability\n";
    for (std::uint64_t key = 0; key < dist.probabilities.size(); ++key) {
        if (dist.probabilities[key] <= 1e-10) {
            continue;
        }
        for (const auto &v : dist.decode(key)) {
            out << pad(v.to_string(), width);
        }
        out << format_probability(dist.probabilities[key]) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// audit / verify

Transcript load_shot(const std::string &path, std::uint64_t shot) {
    std::vector<Transcript> all = transcripts_from_json(load_document(path));
    if (shot >= all.size()) {
        fail(kExitUsage, "--shot: file '" + path + "' holds " + std::to_string(all.size()) + " transcript(s)");
    }
    return std::move(all[shot]);
}

struct AuditOptions {
    std::string path;
    std::string view = "alice";
    std::vector<std::string> leaks;
    std::uint64_t shot = 0;
    bool json = false;
};

int cmd_audit(const AuditOptions &opt, std::ostream &out) {
    KnowledgeView view = KnowledgeView::for_role(parse_role(opt.view));
    for (const auto &leak : opt.leaks) {
        try {
            view.add(parse_field(leak));
        } catch (const EsrError &e) {
            fail(kExitUsage, std::string("--leak: ") + e.what());
        }
    }
    const Transcript t = load_shot(opt.path, opt.shot);
    const PosteriorTable table = posterior(view, t);
    if (opt.json) {
        out << dump_document(posterior_to_json(view, table));
        return kExitOk;
    }
    const std::size_t wb = std::max<std::size_t>(table.len_ib, 3) + 1;
    const std::size_t wc = std::max<std::size_t>(table.len_ic, 3) + 1;
    out << "view=" << to_string(view.role()) << " n=" << (table.len_ib + table.len_ic)
        << " candidates=" << table.candidates() << " support=" << table.support() << " total=" << table.total << "\n";
    out << pad("i_B", wb) << pad("i_C", wc) << pad("count", 10) << "probability\n";
    for (std::uint64_t k = 0; k < table.counts.size(); ++k) {
        if (table.counts[k] == 0) {
            continue;
        }
        const SecretPair cand = table.candidate(k);
        const std::string ib = cand.i_b.empty() ? "-" : cand.i_b.to_string();
        const std::string ic = cand.i_c.empty() ? "-" : cand.i_c.to_string();
        out << pad(ib, wb) << pad(ic, wc) << pad(std::to_string(table.counts[k]), 10) << table.counts[k] << "/"
            << table.total << "\n";
    }
    out << "verdict=" << (table.is_uniform() ? "UNIFORM" : "NON-UNIFORM") << "\n";
    return kExitOk;
}

struct VerifyOptions {
    std::string path;
    bool json = false;
};

int cmd_verify(const VerifyOptions &opt, std::ostream &out) {
    const std::vector<Transcript> all = transcripts_from_json(load_document(opt.path));
    bool passed = true;
    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t s = 0; s < all.size(); ++s) {
        const VerificationReport report = verify_transcript(all[s]);
        passed = passed && report.passed();
        if (opt.json) {
            reports.push_back(report_to_json(report));
            continue;
        }
        for (const auto &c : report.checks) {
            out << "shot=" << s << " check=" << c.name << " status=" << to_string(c.status);
            if (!c.detail.empty()) {
                out << " detail=\"" << c.detail << "\"";
            }
            out << "\n";
        }
    }
    if (opt.json) {
        out << dump_document(reports.size() == 1 ? reports.front() : reports);
    } else {
        out << "verdict=" << (passed ? "PASS" : "FAIL") << "\n";
    }
    return passed ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::size_t n_max = 6;
    std::uint64_t shots = 20;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchOptions &opt, std::ostream &out) {
    if (opt.n_max == 0) {
        fail(kExitUsage, "--n-max: must be at least 1");
    }
    if (opt.shots == 0) {
        fail(kExitUsage, "--shots: must be at least 1");
    }
    const std::size_t cap = cap_from_env();
    out << pad("n", 4) << pad("backend", 10) << pad("qubits", 8) << pad("memory_bytes", 16) << "ms_per_shot\n";
    for (std::size_t n = 1; n <= opt.n_max; ++n) {
        for (Backend backend : {Backend::full, Backend::reduced, Backend::analytic}) {
            ExchangeConfig config;
            config.i_b = BitVector(n);
            config.backend = backend;
            config.master_seed = opt.seed;
            config.qubit_cap = cap;
            const std::size_t qubits = config.qubits_required();
            const std::string memory =
                backend == Backend::analytic ? "0" : std::to_string((std::uint64_t{1} << qubits) * sizeof(Amplitude));
            out << pad(std::to_string(n), 4) << pad(std::string(to_string(backend)), 10)
                << pad(std::to_string(qubits), 8);
            if (qubits > cap) {
                out << pad("-", 16) << "skipped (exceeds qubit cap " << cap << ")\n";
                continue;
            }
            const auto start = std::chrono::steady_clock::now();
            for (std::uint64_t s = 0; s < opt.shots; ++s) {
                run_exchange(config, s);
            }
            const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
            char ms[32];
            std::snprintf(ms, sizeof ms, "%.4f", elapsed.count() / static_cast<double>(opt.shots));
            out << pad(memory, 16) << ms << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement-based simultaneous reciprocal exchange: simulator and auditor", "esr"};
    app.require_subcommand(1);

    ExchangeOptions ex;
    auto *exchange = app.add_subcommand("exchange", "Run the exchange protocol and write transcripts");
    exchange->add_option("--ib", ex.ib, "Bob's secret as an msb-first bitstring");
    exchange->add_option("--ic", ex.ic, "Charlie's secret as an msb-first bitstring");
    exchange->add_option("--ib-file", ex.ib_file, "Read Bob's secret from a file");
    exchange->add_option("--ic-file", ex.ic_file, "Read Charlie's secret from a file");
    exchange->add_option("--backend", ex.backend, "full | reduced | analytic")
        ->check(CLI::IsMember({"full", "reduced", "analytic"}));
    exchange->add_option("--variant", ex.variant, "ghz3 | epr")->check(CLI::IsMember({"ghz3", "epr"}));
    exchange->add_option("--seed", ex.seed, "Master seed");
    exchange->add_option("--shots", ex.shots, "Number of runs");
    exchange->add_option("--out", ex.out_path, "Transcript file (an array when --shots > 1)");
    exchange->add_flag("--redact", ex.redact, "Omit secrets, raw outcomes and reconstructions");

    DistOptions di;
    auto *dist = app.add_subcommand("dist", "Print the exact joint outcome distribution");
    dist->add_option("--i", di.i, "Aggregated vector i = i_B i_C")->required();
    dist->add_option("--backend", di.backend, "statevector | analytic")
        ->check(CLI::IsMember({"statevector", "analytic"}));
    dist->add_option("--variant", di.variant, "ghz3 | epr")->check(CLI::IsMember({"ghz3", "epr"}));
    dist->add_option("--fidelity", di.fidelity, "full | reduced (statevector only)")
        ->check(CLI::IsMember({"full", "reduced"}));

    AuditOptions au;
    auto *audit = app.add_subcommand("audit", "Posterior over the secrets from one party's view");
    audit->add_option("transcript", au.path, "Transcript file")->required();
    audit->add_option("--view", au.view, "alice | eavesdropper | bob | charlie")
        ->check(CLI::IsMember({"alice", "eavesdropper", "bob", "charlie"}));
    audit->add_option("--leak", au.leaks, "Extra fields the view learns (e.g. b_C)");
    audit->add_option("--shot", au.shot, "Index into a multi-shot file");
    audit->add_flag("--json", au.json, "Print the posterior as JSON");

    VerifyOptions ve;
    auto *verify = app.add_subcommand("verify", "Check a transcript for consistency");
    verify->add_option("transcript", ve.path, "Transcript file")->required();
    verify->add_flag("--json", ve.json, "Print the report as JSON");

    BenchOptions be;
    auto *bench = app.add_subcommand("bench", "Time each backend for n = 1..n-max");
    bench->add_option("--n-max", be.n_max, "Largest n");
    bench->add_option("--shots", be.shots, "Runs per (n, backend)");
    bench->add_option("--seed", be.seed, "Master seed");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("esr");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*exchange) {
            return cmd_exchange(ex, out);
        }
        if (*dist) {
            return cmd_dist(di, out);
        }
        if (*audit) {
            return cmd_audit(au, out);
        }
        if (*verify) {
            return cmd_verify(ve, out);
        }
        if (*bench) {
            return cmd_bench(be, out);
        }
    } catch (const UsageFailure &f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const EsrError &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kExitUsage;
}

}  // namespace esr::cli
