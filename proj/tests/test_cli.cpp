// SPDX-License-Identifier: Apache-2.0
//
// mtdl: non-stationary Markov tapped-delay-line channel toolkit
// Copyright (C) 2026 The mtdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Runs the command-line tool as a subprocess and checks files and exit codes.

#include "support.hpp"

#include <mtdl/trace_io.hpp>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef MTDL_CLI_PATH
#error "MTDL_CLI_PATH must point at the mtdl-cli executable"
#endif

namespace
{
    struct Run
    {
        int code = -1;
        std::string out;
        std::string err;
    };

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void spit(const std::string &path, const std::string &text)
    {
        std::ofstream(path, std::ios::binary) << text;
    }

    Run cli(const testing::TempDir &dir, const std::string &args)
    {
        const auto out = dir.file(".stdout"), err = dir.file(".stderr");
        const std::string cmd = "cd '" + dir.path().string() + "' && '" MTDL_CLI_PATH "' " + args + " >'" + out +
                                "' 2>'" + err + "'";
        const int status = std::system(cmd.c_str());
        Run r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    const char *kConfig = R"({"schema_version": 1, "preset": "5gr", "n_snapshots": 1000, "seed": 42})";
} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("generate is byte-deterministic and seed-sensitive")
    {
        testing::TempDir dir;
        spit(dir.file("cfg.json"), kConfig);
        REQUIRE(cli(dir, "generate --config cfg.json --out a.bin").code == 0);
        REQUIRE(cli(dir, "generate --config cfg.json --out b.bin").code == 0);
        REQUIRE(cli(dir, "generate --config cfg.json --out c.bin --seed 43").code == 0);
        CHECK(slurp(dir.file("a.bin")) == slurp(dir.file("b.bin")));
        CHECK(slurp(dir.file("a.bin")) != slurp(dir.file("c.bin")));
        const auto a = mtdl::read_trace(dir.file("a.bin"));
        const auto c = mtdl::read_trace(dir.file("c.bin"));
        CHECK(a.n_snapshots() == 1000);
        CHECK(a.n_taps() == 5);
        CHECK(c.n_snapshots() == a.n_snapshots());
        CHECK(c.n_taps() == a.n_taps());
        CHECK(c.meta.rng_seed == 43);

        const auto m = nlohmann::json::parse(slurp(dir.file("c.bin.manifest.json")));
        CHECK(m.at("command") == "generate");
        CHECK(m.at("seeds").at(0) == 43);
        CHECK(m.at("config").at("seed") == 43);
        CHECK(m.at("outputs").at(0).at("path") == "c.bin");
    }

    TEST_CASE("text export")
    {
        testing::TempDir dir;
        spit(dir.file("cfg.json"), kConfig);
        REQUIRE(cli(dir, "generate --config cfg.json --out a.bin").code == 0);
        REQUIRE(cli(dir, "generate --config cfg.json --out a.txt --format text").code == 0);
        CHECK(slurp(dir.file("a.txt")).rfind("# mtdl-cir-text 1", 0) == 0);
        CHECK(mtdl::read_trace(dir.file("a.txt")) == mtdl::read_trace(dir.file("a.bin")));
        CHECK(cli(dir, "--verify-manifest a.txt.manifest.json").code == 0);
        CHECK(cli(dir, "generate --config cfg.json --out a.x --format hdf5").code == 2);
    }

    TEST_CASE("zero snapshots exits 3 naming the field")
    {
        testing::TempDir dir;
        spit(dir.file("cfg.json"), R"({"schema_version": 1, "preset": "5gr", "n_snapshots": 0, "seed": 1})");
        const auto r = cli(dir, "generate --config cfg.json --out a.bin");
        CHECK(r.code == 3);
        CHECK(r.err.find("n_snapshots") != std::string::npos);
        CHECK_FALSE(std::filesystem::exists(dir.file("a.bin")));
    }

    TEST_CASE("malformed configs exit 2 with a location")
    {
        testing::TempDir dir;
        spit(dir.file("syntax.json"), "{\n  \"schema_version\": 1,\n  \"preset\": \"5gr\"\n  \"n_snapshots\": 5\n}\n");
        auto r = cli(dir, "generate --config syntax.json --out a.bin");
        CHECK(r.code == 2);
        CHECK(r.err.find("line 4") != std::string::npos);

        spit(dir.file("typo.json"), R"({"schema_version": 1, "preset": "5gr", "n_snapshot": 5})");
        r = cli(dir, "generate --config typo.json --out a.bin");
        CHECK(r.code == 2);
        CHECK(r.err.find("n_snapshot") != std::string::npos);

        spit(dir.file("invalid.json"),
             R"({"schema_version": 1, "preset": "5gr", "n_snapshots": 5, "carrier_hz": -1})");
        CHECK(cli(dir, "generate --config invalid.json --out a.bin").code == 3);
    }

    TEST_CASE("bad command lines exit 2")
    {
        testing::TempDir dir;
        CHECK(cli(dir, "").code == 2);
        CHECK(cli(dir, "generate --out a.bin").code == 2);
        CHECK(cli(dir, "generate --config missing.json --out a.bin").code == 2);
        CHECK(cli(dir, "frobnicate").code == 2);
        CHECK(cli(dir, "--help").code == 0);
        CHECK(cli(dir, "--version").out.find("mtdl-1.0.0") != std::string::npos);
    }

    TEST_CASE("estimate writes a model and a verifiable manifest")
    {
        testing::TempDir dir;
        spit(dir.file("cfg.json"),
             R"({"schema_version": 1, "preset": "5gr", "n_snapshots": 20000, "seed": 5})");
        REQUIRE(cli(dir, "generate --config cfg.json --out t.bin").code == 0);
        const auto r = cli(dir, "estimate --trace t.bin --out model.json");
        REQUIRE(r.code == 0);
        CHECK(r.out.find("estimated 5 taps") != std::string::npos);
        const auto model = nlohmann::json::parse(slurp(dir.file("model.json")));
        CHECK(model.at("taps").size() == 5);
        CHECK(model.contains("diagnostics"));
        CHECK(cli(dir, "--verify-manifest model.json.manifest.json").code == 0);

        spit(dir.file("model.json"), "{}");
        CHECK(cli(dir, "--verify-manifest model.json.manifest.json").code == 3);
    }

    TEST_CASE("estimate rejects empty and corrupt traces with exit 2")
    {
        testing::TempDir dir;
        spit(dir.file("empty.bin"), "");
        auto r = cli(dir, "estimate --trace empty.bin --out m.json");
        CHECK(r.code == 2);
        CHECK(r.err.find("byte 0") != std::string::npos);

        spit(dir.file("cfg.json"), kConfig);
        REQUIRE(cli(dir, "generate --config cfg.json --out t.bin").code == 0);
        const auto bytes = slurp(dir.file("t.bin"));
        spit(dir.file("cut.bin"), bytes.substr(0, 500));
        r = cli(dir, "estimate --trace cut.bin --out m.json");
        CHECK(r.code == 2);
        CHECK(r.err.find("byte 500") != std::string::npos);
        CHECK(cli(dir, "estimate --trace nothere.bin --out m.json").code == 2);
    }

    TEST_CASE("compare writes report, histograms and manifest")
    {
        testing::TempDir dir;
        spit(dir.file("m.json"), R"({"schema_version": 1, "preset": "5gr", "n_snapshots": 5000, "seed": 1})");
        spit(dir.file("s.json"),
             R"({"schema_version": 1, "model": "stationary", "preset": "5gr", "n_snapshots": 5000, "seed": 1})");
        REQUIRE(cli(dir, "generate --config m.json --out markov.bin").code == 0);
        REQUIRE(cli(dir, "generate --config s.json --out baseline.bin").code == 0);
        const auto r = cli(dir, "compare markov.bin baseline.bin markov.bin --out report.json --bins 20");
        REQUIRE(r.code == 0);
        const auto rep = nlohmann::json::parse(slurp(dir.file("report.json")));
        REQUIRE(rep.at("traces").size() == 3);
        CHECK(rep.at("traces").at(2).at("name") == "markov_2");
        for (const auto &p : rep.at("pairs"))
            if (p.at("a") == "markov" && p.at("b") == "markov_2")
                CHECK(p.at("ks_stat") == 0.0);
        for (double o : rep.at("traces").at(1).at("occupancy"))
            CHECK(o == 1.0);
        CHECK(rep.at("traces").at(0).at("occupancy").at(4).get<double>() < 0.8);
        CHECK(std::filesystem::exists(dir.file("report.markov.pdf.csv")));
        CHECK(std::filesystem::exists(dir.file("report.baseline.pdf.csv")));
        CHECK(slurp(dir.file("report.markov.pdf.csv")).rfind("# bin_edge_lo,bin_edge_hi,density", 0) == 0);
        CHECK(cli(dir, "--verify-manifest report.json.manifest.json").code == 0);
    }

    TEST_CASE("compare preconditions map to exit 3")
    {
        testing::TempDir dir;
        spit(dir.file("m.json"), kConfig);
        REQUIRE(cli(dir, "generate --config m.json --out a.bin").code == 0);
        auto other = testing::constant_trace({{1.0, 0.0}, {0.5, 0.0}, {0.2, 0.0}, {0.1, 0.0}, {0.1, 0.0}}, 100);
        other.delays_s = {0.0, 200e-9, 400e-9, 600e-9, 800e-9};
        mtdl::write_trace(dir.file("other.bin"), other);
        CHECK(cli(dir, "compare a.bin other.bin --out r.json").code == 3);
        CHECK(cli(dir, "compare a.bin --out r.json").code == 3);
    }

    TEST_CASE("tampered outputs fail verification")
    {
        testing::TempDir dir;
        spit(dir.file("cfg.json"), kConfig);
        REQUIRE(cli(dir, "generate --config cfg.json --out a.bin").code == 0);
        CHECK(cli(dir, "--verify-manifest a.bin.manifest.json").code == 0);
        auto bytes = slurp(dir.file("a.bin"));
        bytes[bytes.size() / 2] ^= 0x10;
        spit(dir.file("a.bin"), bytes);
        const auto r = cli(dir, "--verify-manifest a.bin.manifest.json");
        CHECK(r.code == 3);
        CHECK(r.err.find("a.bin") != std::string::npos);
        CHECK(cli(dir, "--verify-manifest nothere.json").code == 2);
    }

    TEST_CASE("preset export loads back")
    {
        testing::TempDir dir;
        REQUIRE(cli(dir, "preset --out p.json").code == 0);
        const auto p = nlohmann::json::parse(slurp(dir.file("p.json")));
        CHECK(p.at("taps").size() == 5);
        CHECK(p.at("schema_version") == 1);
    }
}
