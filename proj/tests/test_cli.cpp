// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "carspeak/cli.hpp"
#include "support/synthetic_corpus.hpp"

namespace carspeak {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli_run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("carspeak_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
        testing::SyntheticCorpusOptions opt;
        opt.n_classes = 6;
        opt.reviews_per_class = 10;
        sc_ = testing::make_synthetic_corpus(opt);
        std::ofstream out(path("corpus.jsonl"));
        serialize_corpus(sc_.corpus, out);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
    testing::SyntheticCorpus sc_;
};

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    const auto r = run({"frobnicate"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"stats"}).code, kExitUsage);
    EXPECT_EQ(run({"train", "--corpus", path("corpus.jsonl"), "--model", "tree", "--out", path("m")}).code,
              kExitUsage);
    EXPECT_EQ(run({"evaluate", "--corpus", path("corpus.jsonl"), "--models", "knn,tree"}).code, kExitUsage);
    EXPECT_EQ(run({"topwords", "--corpus", path("corpus.jsonl"), "--k", "0"}).code, kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("evaluate"), std::string::npos);
}

TEST_F(CliTest, DataErrors) {
    EXPECT_EQ(run({"stats", "--corpus", path("missing.jsonl")}).code, kExitData);
    {
        std::ofstream bad(path("bad.jsonl"));
        bad << "{\"id\":\"1\",\"make\":\"a\"}\n";
    }
    const auto r = run({"stats", "--corpus", path("bad.jsonl")});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("line 1: missing field"), std::string::npos);
    {
        std::ofstream junk(path("junk.cspk"));
        junk << "hello";
    }
    EXPECT_EQ(run({"predict", "--model", path("junk.cspk"), "--text", "car"}).code, kExitData);
}

TEST_F(CliTest, PredictWithoutModel) {
    const auto r = run({"predict", "--text", "fast car"});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("--model"), std::string::npos);
}

TEST_F(CliTest, Stats) {
    const auto r = run({"stats", "--corpus", path("corpus.jsonl")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, "{\"n_reviews\":60,\"n_models\":6,\"n_makes\":2}\n");
}

TEST_F(CliTest, TopwordsMatchesLibrary) {
    const auto r = run({"topwords", "--corpus", path("corpus.jsonl"), "--k", "20"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ostringstream expected;
    for (const auto& [w, n] : top_k_frequencies(sc_.corpus, PosLexicon::builtin(), 20))
        expected << w << '\t' << n << '\n';
    EXPECT_EQ(r.out, expected.str());
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 20);
}

TEST_F(CliTest, IngestAppliesYearWindow) {
    const auto r = run({"ingest", "--input", path("corpus.jsonl"), "--output", path("clean.jsonl"), "--min-year",
                        "2005", "--max-year", "2010"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path("clean.jsonl"));
    const auto kept = ingest_corpus(in);
    EXPECT_GT(kept.size(), 0u);
    for (const auto& d : kept) {
        ASSERT_TRUE(d.year);
        EXPECT_GE(*d.year, 2005);
        EXPECT_LE(*d.year, 2010);
    }
    EXPECT_EQ(run({"ingest", "--input", path("corpus.jsonl"), "--min-year", "2010", "--max-year", "2005"}).code,
              kExitData);
}

TEST_F(CliTest, TrainIsByteDeterministicAndPredicts) {
    for (const char* kind : {"knn", "rf", "svm", "mlp"}) {
        std::vector<std::string> args{"train", "--corpus", path("corpus.jsonl"), "--model", kind, "--seed", "3",
                                      "--trees", "5", "--hidden", "8", "--mlp-epochs", "5"};
        auto a = args, b = args;
        a.insert(a.end(), {"--out", path("a.cspk")});
        b.insert(b.end(), {"--out", path("b.cspk")});
        ASSERT_EQ(run(a).code, kExitOk) << kind;
        ASSERT_EQ(run(b).code, kExitOk) << kind;
        EXPECT_EQ(slurp(path("a.cspk")), slurp(path("b.cspk"))) << kind;
        const auto bundle = load_bundle_file(path("a.cspk"));
        EXPECT_EQ(kind_name(bundle.kind()), kind);
        EXPECT_EQ(bundle.metadata.seed, 3u);

        const auto text = sc_.class_words[2][0] + " " + sc_.class_words[2][1];
        const auto p = run({"predict", "--model", path("a.cspk"), "--text", text, "--top", "2"});
        ASSERT_EQ(p.code, kExitOk) << p.err;
        const auto j = nlohmann::json::parse(p.out);
        EXPECT_EQ(j["classifier"], kind);
        EXPECT_EQ(j["results"].size(), 2u);
    }
}

TEST_F(CliTest, EvaluateReportsEveryClassifier) {
    const std::vector<std::string> args{"evaluate", "--corpus", path("corpus.jsonl"), "--folds", "4", "--seed", "7",
                                        "--trees", "10", "--hidden", "16", "--mlp-epochs", "10"};
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path("r1.jsonl"), "--fold-report", path("folds.jsonl")});
    const auto r = run(with_out);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("F1-micro"), std::string::npos);

    std::ifstream in(path("r1.jsonl"));
    std::string line;
    std::vector<std::string> kinds;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        kinds.push_back(j["classifier"]);
        EXPECT_EQ(j["k"], 4);
        EXPECT_EQ(j["seed"], 7);
        EXPECT_EQ(j["fit_scope"], "train");
    }
    EXPECT_EQ(kinds, (std::vector<std::string>{"knn", "rf", "svm", "mlp"}));
    EXPECT_EQ(std::count(std::istreambuf_iterator<char>(std::ifstream(path("folds.jsonl")).rdbuf()), {}, '\n'), 20);

    const auto stdout_run = run(args);
    EXPECT_EQ(stdout_run.out, slurp(path("r1.jsonl")));
}

TEST_F(CliTest, EvaluateSubsetAndScope) {
    const auto r = run({"evaluate", "--corpus", path("corpus.jsonl"), "--models", "knn,svm", "--fit-scope", "all",
                        "--stratified"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
    EXPECT_NE(r.out.find("\"fit_scope\":\"all\""), std::string::npos);
}

TEST_F(CliTest, ServeRejectsMissingModel) {
    EXPECT_EQ(run({"serve", "--model", path("none.cspk"), "--port", "0"}).code, kExitData);
}

TEST_F(CliTest, ServeRejectsBusyPort) {
    ASSERT_EQ(run({"train", "--corpus", path("corpus.jsonl"), "--model", "knn", "--out", path("m.cspk")}).code,
              kExitOk);
    httplib::Server holder;
    const int port = holder.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    const auto r = run({"serve", "--model", path("m.cspk"), "--port", std::to_string(port)});
    EXPECT_EQ(r.code, kExitData);
    EXPECT_NE(r.err.find("cannot listen"), std::string::npos);
}

TEST_F(CliTest, CustomLexicon) {
    {
        std::ofstream lex(path("lex.tsv"));
        lex << "car\tOTHER\n";
    }
    const auto r = run({"--lexicon", path("lex.tsv"), "topwords", "--corpus", path("corpus.jsonl"), "--k", "200"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.find("car\t"), std::string::npos);
    EXPECT_NE(r.out.find("is\t"), std::string::npos);
}

}  // namespace
}  // namespace carspeak
