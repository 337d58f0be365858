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

// Acceptance suite. Prints one line per criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "esr/analytic.hpp"
#include "esr/audit.hpp"
#include "esr/protocol.hpp"
#include "esr/statevector.hpp"
#include "esr/transcript_json.hpp"
#include "oracles.hpp"

using namespace esr;

namespace {

/// Collects the first few failure messages of a criterion.
class Verdict {
public:
    void fail(const std::string &why) {
        if (failures_++ < 5) {
            notes_.push_back(why);
        }
    }
    void expect(bool ok, const std::function<std::string()> &why) {
        if (!ok) {
            fail(why());
        }
    }
    bool ok() const noexcept {
        return failures_ == 0;
    }
    std::size_t failures() const noexcept {
        return failures_;
    }
    const std::vector<std::string> &notes() const noexcept {
        return notes_;
    }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> notes_;
};

BitVector random_bits(std::mt19937_64 &gen, std::size_t len) {
    std::vector<std::uint8_t> bits(len);
    for (auto &b : bits) {
        b = static_cast<std::uint8_t>(gen() & 1);
    }
    return BitVector::from_lsb_first(bits);
}

std::string str(std::uint64_t v) {
    return std::to_string(v);
}

// --- 1 ----------------------------------------------------------------------

void ghz_state_fidelity(Verdict &v) {
    for (unsigned n = 1; n <= 3; ++n) {
        const std::uint64_t m = std::uint64_t{1} << n;
        const double expected = 1.0 / std::sqrt(static_cast<double>(m));
        for (Fidelity f : {Fidelity::full, Fidelity::reduced}) {
            const StateVector s = prepare_ghz3n(n, f);
            std::vector<std::uint64_t> support;
            for (std::uint64_t x = 0; x < m; ++x) {
                support.push_back(f == Fidelity::full ? ((((x * 2 + 1) * m + x) * 2 + 1) * m + x)
                                                      : ((x * m + x) * m + x));
            }
            std::size_t nonzero = 0;
            for (std::uint64_t k = 0; k < s.size(); ++k) {
                const Amplitude a = s.amplitude(k);
                const bool on_support = std::find(support.begin(), support.end(), k) != support.end();
                if (std::abs(a) > 1e-12) {
                    ++nonzero;
                }
                if (on_support) {
                    v.expect(std::abs(a - Amplitude(expected, 0.0)) <= 1e-12,
                             [&] { return "n=" + str(n) + " amplitude off at index " + str(k); });
                } else {
                    v.expect(std::abs(a) <= 1e-12, [&] { return "n=" + str(n) + " stray amplitude at " + str(k); });
                }
            }
            v.expect(nonzero == m, [&] { return "n=" + str(n) + " has " + str(nonzero) + " nonzero amplitudes"; });

            const StateVector g = prepare_ghz3n_gates(n, f);
            double worst = 0.0;
            for (std::uint64_t k = 0; k < s.size(); ++k) {
                worst = std::max(worst, std::abs(s.amplitude(k) - g.amplitude(k)));
            }
            v.expect(worst <= 1e-12, [&] { return "n=" + str(n) + " gate path differs by " + std::to_string(worst); });
        }
    }
}

// --- 2 ----------------------------------------------------------------------

void correlation_totality(Verdict &v) {
    constexpr int kShots = 10000;
    for (unsigned n = 1; n <= 4; ++n) {
        for (Backend backend : {Backend::full, Backend::reduced, Backend::analytic}) {
            std::atomic<int> violations{0};
            std::atomic<int> failures{0};
#pragma omp parallel for schedule(dynamic, 64)
            for (int s = 0; s < kShots; ++s) {
                std::mt19937_64 gen(splitmix64((std::uint64_t{n} << 40) ^ (static_cast<std::uint64_t>(backend) << 32) ^
                                               static_cast<std::uint64_t>(s)));
                const std::size_t lb = gen() % (n + 1);
                ExchangeConfig c;
                c.i_b = random_bits(gen, lb);
                c.i_c = random_bits(gen, n - lb);
                c.backend = backend;
                c.master_seed = gen();
                const Transcript t = run_exchange(c, static_cast<std::uint64_t>(s));
                const PrivateOutcomes &o = *t.outcomes;
                if (bit_xor(o.a, bit_xor(o.b, o.c)) != concat(c.i_b, c.i_c)) {
                    ++violations;
                }
                if (!t.success) {
                    ++failures;
                }
            }
            v.expect(violations == 0 && failures == 0, [&] {
                return "n=" + str(n) + " backend=" + std::string(to_string(backend)) + ": " + str(violations.load()) +
                       " violations, " + str(failures.load()) + " failed reconstructions";
            });
        }
    }
}

// --- 3 ----------------------------------------------------------------------

void exact_distribution_equivalence(Verdict &v) {
    for (unsigned n = 1; n <= 3; ++n) {
        const double target = 1.0 / static_cast<double>(std::uint64_t{1} << (2 * n));
        for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv) {
            const BitVector i = BitVector::from_uint(iv, n);
            const JointDistribution exact = exact_distribution(i);
            for (std::size_t lb = 0; lb <= n; ++lb) {
                auto [ib, ic] = split_at(i, lb);
                for (Fidelity f : {Fidelity::full, Fidelity::reduced}) {
                    EsrCircuit circuit(ib, ic, Variant::ghz3, f);
                    circuit.run_to(EsrCircuit::Phase::psi3);
                    const JointDistribution sv =
                        circuit.state().block_marginal(std::vector<std::string>{"AIR", "BIR", "CIR"});
                    for (std::size_t k = 0; k < exact.probabilities.size(); ++k) {
                        const bool in_sv = sv.probabilities[k] > 1e-10;
                        const bool in_exact = exact.probabilities[k] > 0.0;
                        v.expect(in_sv == in_exact, [&] { return "support differs at key " + str(k); });
                        if (in_exact) {
                            v.expect(std::abs(sv.probabilities[k] - target) <= 1e-10 &&
                                         std::abs(exact.probabilities[k] - target) <= 1e-10,
                                     [&] { return "probability off at key " + str(k); });
                        } else {
                            v.expect(std::abs(sv.probabilities[k]) <= 1e-10,
                                     [&] { return "mass outside support at key " + str(k); });
                        }
                    }
                }
            }
        }
    }
}

// --- 4 ----------------------------------------------------------------------

void reconstruction_totality(Verdict &v) {
    std::mt19937_64 gen(4);
    for (int run = 0; run < 1000; ++run) {
        std::size_t lb = 0;
        std::size_t lc = 0;
        do {
            lb = gen() % 17;
            lc = gen() % 17;
        } while (lb + lc == 0);
        ExchangeConfig c;
        c.i_b = random_bits(gen, lb);
        c.i_c = random_bits(gen, lc);
        c.master_seed = gen();
        const Transcript t = run_exchange(c);
        v.expect(t.reconstructed->i_c == c.i_c, [&] { return "Bob missed i_C in run " + str(run); });
        v.expect(t.reconstructed->i_b == c.i_b, [&] { return "Charlie missed i_B in run " + str(run); });
    }
}

// --- 5 ----------------------------------------------------------------------

void obliviousness(Verdict &v) {
    std::mt19937_64 gen(5);
    for (unsigned n = 1; n <= 4; ++n) {
        for (std::size_t lb = 0; lb <= n; ++lb) {
            for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv) {
                auto [ib, ic] = split_at(BitVector::from_uint(iv, n), lb);
                for (int s = 0; s < 20; ++s) {
                    ExchangeConfig c;
                    c.i_b = ib;
                    c.i_c = ic;
                    c.master_seed = gen();
                    const Transcript t = run_exchange(c);
                    for (Role role : {Role::alice, Role::eavesdropper}) {
                        const PosteriorTable p = posterior(KnowledgeView::for_role(role), t);
                        const bool uniform = p.candidates() == (std::size_t{1} << n) && counts_uniform(p.counts);
                        v.expect(uniform, [&] {
                            return std::string(to_string(role)) + " posterior not uniform for i_B=" + ib.to_string() +
                                   " i_C=" + ic.to_string();
                        });
                    }
                }
            }
        }
    }
}

// --- 6 ----------------------------------------------------------------------

void negative_control(Verdict &v) {
    std::mt19937_64 gen(6);
    for (unsigned n = 1; n <= 4; ++n) {
        for (std::size_t lb = 0; lb < n; ++lb) {
            for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv) {
                auto [ib, ic] = split_at(BitVector::from_uint(iv, n), lb);
                ExchangeConfig c;
                c.i_b = ib;
                c.i_c = ic;
                c.master_seed = gen();
                const Transcript t = run_exchange(c);
                KnowledgeView view = KnowledgeView::for_role(Role::eavesdropper);
                view.add(Field::b_C);
                const PosteriorTable p = posterior(view, t);
                const std::vector<std::uint64_t> mc = p.marginal_ic();
                std::size_t support = 0;
                for (std::size_t k = 0; k < mc.size(); ++k) {
                    support += mc[k] != 0 ? 1 : 0;
                }
                v.expect(support == 1 && mc[ic.to_uint()] == p.total,
                         [&] { return "i_C not pinned for i_B=" + ib.to_string() + " i_C=" + ic.to_string(); });
                v.expect(counts_uniform(p.marginal_ib()),
                         [&] { return "i_B not uniform for i_B=" + ib.to_string() + " i_C=" + ic.to_string(); });
            }
        }
    }
}

// --- 7 ----------------------------------------------------------------------

void output_register_preservation(Verdict &v) {
    for (unsigned n = 1; n <= 3; ++n) {
        for (std::size_t lb = 0; lb <= n; ++lb) {
            for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv) {
                auto [ib, ic] = split_at(BitVector::from_uint(iv, n), lb);
                EsrCircuit circuit(ib, ic, Variant::ghz3, Fidelity::full);
                for (EsrCircuit::Phase phase : {EsrCircuit::Phase::psi1, EsrCircuit::Phase::psi3}) {
                    circuit.run_to(phase);
                    for (const char *reg : {"BOR", "COR"}) {
                        const double fid = circuit.state().output_register_fidelity(reg);
                        v.expect(fid >= 1.0 - 1e-10, [&] {
                            return std::string(reg) + " fidelity " + std::to_string(fid) + " at n=" + str(n);
                        });
                    }
                }
            }
        }
    }
}

// --- 8 ----------------------------------------------------------------------

void epr_variant(Verdict &v) {
    for (unsigned n = 1; n <= 3; ++n) {
        const std::uint64_t m = std::uint64_t{1} << n;
        for (std::uint64_t iv = 0; iv < m; ++iv) {
            for (std::size_t lb = 0; lb <= n; ++lb) {
                auto [ib, ic] = split_at(BitVector::from_uint(iv, n), lb);
                for (Fidelity f : {Fidelity::full, Fidelity::reduced}) {
                    EsrCircuit circuit(ib, ic, Variant::epr, f);
                    circuit.run_to(EsrCircuit::Phase::psi3);
                    const JointDistribution d = circuit.state().block_marginal(std::vector<std::string>{"BIR", "CIR"});
                    for (std::uint64_t b = 0; b < m; ++b) {
                        for (std::uint64_t c = 0; c < m; ++c) {
                            const double p = d.probabilities[b * m + c];
                            const double want = (b ^ c) == iv ? 1.0 / static_cast<double>(m) : 0.0;
                            v.expect(std::abs(p - want) <= 1e-10, [&] {
                                return "n=" + str(n) + " i=" + str(iv) + " (b,c)=(" + str(b) + "," + str(c) +
                                       ") has " + std::to_string(p);
                            });
                        }
                    }
                }
            }
        }
    }
    std::mt19937_64 gen(8);
    for (int run = 0; run < 1000; ++run) {
        std::size_t lb = 0;
        std::size_t lc = 0;
        do {
            lb = gen() % 17;
            lc = gen() % 17;
        } while (lb + lc == 0);
        ExchangeConfig c;
        c.i_b = random_bits(gen, lb);
        c.i_c = random_bits(gen, lc);
        c.variant = Variant::epr;
        c.master_seed = gen();
        const Transcript t = run_exchange(c);
        v.expect(t.success && t.reconstructed->i_b == c.i_b && t.reconstructed->i_c == c.i_c,
                 [&] { return "epr reconstruction failed in run " + str(run); });
    }
}

// --- 9 ----------------------------------------------------------------------

void hadamard_layer(Verdict &v) {
    for (unsigned n = 1; n <= 4; ++n) {
        const std::uint64_t m = std::uint64_t{1} << n;
        const RegisterLayout layout = RegisterLayout::from_blocks({{"R", n}});
        for (std::uint64_t x = 0; x < m; ++x) {
            StateVector s = StateVector::basis(layout, x);
            s.apply_hadamard_block("R");
            for (std::uint64_t z = 0; z < m; ++z) {
                const Amplitude got = s.amplitude(z);
                const double want = oracle::hadamard_coefficient(n, z, x);
                v.expect(std::abs(got - Amplitude(want, 0.0)) <= 1e-12,
                         [&] { return "n=" + str(n) + " x=" + str(x) + " z=" + str(z); });
            }
        }
    }
}

// --- 10 ---------------------------------------------------------------------

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void determinism(Verdict &v) {
    const std::string p1 = "acceptance_run1.json";
    const std::string p2 = "acceptance_run2.json";
    for (const std::string &backend : {"full", "reduced", "analytic"}) {
        for (const std::string &p : {p1, p2}) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run({"exchange", "--ib", "1011", "--ic", "01", "--backend", backend, "--seed", "7",
                                       "--shots", "8", "--out", p},
                                      out, err);
            v.expect(code == cli::kExitOk, [&] { return "exchange exited " + str(code) + ": " + err.str(); });
        }
        const std::string a = read_file(p1);
        v.expect(!a.empty() && a == read_file(p2), [&] { return backend + " transcripts differ between runs"; });
    }

    {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run({"verify", p1}, out, err);
        v.expect(code == cli::kExitOk, [&] { return "clean transcript failed verify: " + out.str(); });
    }

    nlohmann::json doc = load_document(p1);
    std::string &bits = doc[0]["public"]["b_B"].get_ref<std::string &>();
    bits.pop_back();
    std::ofstream(p1, std::ios::binary | std::ios::trunc) << dump_document(doc);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"verify", p1}, out, err);
    v.expect(code == cli::kExitFailure, [&] { return "corrupted transcript gave exit " + str(code); });
    v.expect(out.str().find("check=length_consistency status=fail") != std::string::npos,
             [&] { return "no named failing check in: " + out.str(); });
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

struct Criterion {
    int id;
    const char *name;
    double limit_seconds;  // 0 = no runtime bound
    void (*body)(Verdict &);
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "ghz_state_fidelity", 1.0, ghz_state_fidelity},
        {2, "correlation_totality", 30.0, correlation_totality},
        {3, "exact_distribution_equivalence", 10.0, exact_distribution_equivalence},
        {4, "reconstruction_totality", 5.0, reconstruction_totality},
        {5, "obliviousness", 60.0, obliviousness},
        {6, "negative_control", 10.0, negative_control},
        {7, "output_register_preservation", 0.0, output_register_preservation},
        {8, "epr_variant", 0.0, epr_variant},
        {9, "hadamard_layer", 0.0, hadamard_layer},
        {10, "determinism", 0.0, determinism},
    };

    int failed = 0;
    for (const Criterion &c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception &e) {
            v.fail(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0.0 && seconds > c.limit_seconds) {
            v.fail("runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(c.limit_seconds) + " s");
        }
        char line[160];
        std::snprintf(line, sizeof line, "[%s] %2d %-32s %8.3f s", v.ok() ? "PASS" : "FAIL", c.id, c.name, seconds);
        std::cout << line << "\n";
        for (const std::string &note : v.notes()) {
            std::cout << "       " << note << "\n";
        }
        if (!v.ok()) {
            ++failed;
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " acceptance criteria passed\n";
    return failed == 0 ? 0 : 1;
}
