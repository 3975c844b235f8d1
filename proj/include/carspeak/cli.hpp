// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "carspeak/classifier.hpp"
#include "carspeak/corpus.hpp"
#include "carspeak/evaluate.hpp"
#include "carspeak/model_store.hpp"
#include "carspeak/query.hpp"
#include "carspeak/service.hpp"
#include "carspeak/textproc.hpp"

namespace carspeak {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

namespace cli_detail {

/// Errors that map to the data/model exit code.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Corpus read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus " + path);
    return ingest_corpus(in);
}

inline PosLexicon read_lexicon(const std::string& path) {
    if (path.empty()) return PosLexicon::builtin();
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon " + path);
    return PosLexicon::parse(in);
}

/// Writes to `path`, or to `fallback` when path is empty.
template <typename Fn>
void write_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path + " for writing");
    fn(out);
    if (!out) throw DataError("failed writing " + path);
}

inline void add_hyperparameter_flags(CLI::App* cmd, ClassifierSpec& spec) {
    cmd->add_option("--k", spec.knn.k, "KNN neighbour count")->capture_default_str();
    cmd->add_option("--trees", spec.rf.n_trees, "random forest size")->capture_default_str();
    cmd->add_option("--max-depth", spec.rf.max_depth, "random forest depth limit")->capture_default_str();
    cmd->add_option("--min-split", spec.rf.min_split, "smallest node the forest will split")->capture_default_str();
    cmd->add_option("--lambda", spec.svm.lambda, "SVM regularization")->capture_default_str();
    cmd->add_option("--svm-epochs", spec.svm.epochs, "SVM passes over the data")->capture_default_str();
    cmd->add_option("--hidden", spec.mlp.hidden, "MLP hidden width")->capture_default_str();
    cmd->add_option("--lr", spec.mlp.lr, "MLP learning rate")->capture_default_str();
    cmd->add_option("--batch", spec.mlp.batch, "MLP mini-batch size")->capture_default_str();
    cmd->add_option("--mlp-epochs", spec.mlp.epochs, "MLP passes over the data")->capture_default_str();
}

inline std::vector<ClassifierKind> parse_model_list(const std::string& list) {
    if (list == "all") return {std::begin(kAllKinds), std::end(kAllKinds)};
    std::vector<ClassifierKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto k = parse_kind(item);
        if (!k) throw CLI::ValidationError("--models", "unknown classifier '" + item + "'");
        out.push_back(*k);
    }
    if (out.empty()) throw CLI::ValidationError("--models", "no classifiers selected");
    return out;
}

inline int serve(const std::vector<std::string>& model_paths, const std::string& host, int port,
                 const std::string& static_dir, const PosLexicon& lex, std::ostream& out) {
    ServiceModels models;
    models.lexicon = lex;
    for (const auto& p : model_paths) models.bundles.push_back(load_bundle_file(p));
    models.pick_default();

    httplib::Server svr;
    register_routes(svr, models,
                    static_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(static_dir));
    // httplib's default adds SO_REUSEPORT, which lets a second server share a busy port.
    svr.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    if (!svr.bind_to_port(host, port)) throw DataError("cannot listen on " + host + ":" + std::to_string(port));

    // Signals are taken synchronously by a watcher thread; every thread
    // spawned from here inherits the blocked mask.
    sigset_t sigs;
    sigemptyset(&sigs);
    sigaddset(&sigs, SIGINT);
    sigaddset(&sigs, SIGTERM);
    sigaddset(&sigs, SIGUSR1);
    pthread_sigmask(SIG_BLOCK, &sigs, nullptr);

    std::thread watcher([&] {
        int sig = 0;
        sigwait(&sigs, &sig);
        svr.stop();
    });
    out << "serving " << models.bundles.size() << " model(s) on http://" << host << ":" << port
        << " (default classifier " << kind_name(models.bundles[models.default_index].kind()) << ")" << std::endl;
    svr.listen_after_bind();
    pthread_kill(watcher.native_handle(), SIGUSR1);
    watcher.join();
    pthread_sigmask(SIG_UNBLOCK, &sigs, nullptr);
    return kExitOk;
}

}  // namespace cli_detail

/// Runs the carspeak command line. Exit codes: 0 success, 1 usage error,
/// 2 data or model error.
inline int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"carspeak: translate car-speak into car models"};
    app.name("carspeak");
    app.require_subcommand(1);

    std::string lexicon_path;
    app.add_option("--lexicon", lexicon_path, "part-of-speech lexicon file (default: built-in)");

    // ingest
    std::string ingest_input, ingest_output;
    int min_year = 2000, max_year = 2018;
    bool drop_missing_year = false;
    auto* ingest = app.add_subcommand("ingest", "validate and normalize a corpus, applying the year filter");
    ingest->add_option("--input", ingest_input, "raw corpus (JSON lines)")->required();
    ingest->add_option("--output", ingest_output, "normalized corpus (default: stdout)");
    ingest->add_option("--min-year", min_year)->capture_default_str();
    ingest->add_option("--max-year", max_year)->capture_default_str();
    ingest->add_flag("--drop-missing-year", drop_missing_year, "also drop reviews without a year");

    // stats
    std::string corpus_path;
    auto* stats = app.add_subcommand("stats", "review, model and make counts");
    stats->add_option("--corpus", corpus_path)->required();

    // topwords
    std::size_t top_k = 20;
    auto* topwords = app.add_subcommand("topwords", "most frequent content words");
    topwords->add_option("--corpus", corpus_path)->required();
    topwords->add_option("--k", top_k)->capture_default_str()->check(CLI::PositiveNumber);

    // train
    ClassifierSpec train_spec;
    std::string train_kind = "knn", train_out;
    std::uint64_t train_seed = 7;
    auto* train_cmd = app.add_subcommand("train", "fit features and one classifier on a corpus");
    train_cmd->add_option("--corpus", corpus_path)->required();
    train_cmd->add_option("--model", train_kind, "knn|rf|svm|mlp")
        ->capture_default_str()
        ->check(CLI::IsMember({"knn", "rf", "svm", "mlp"}));
    train_cmd->add_option("--out", train_out, "model file to write")->required();
    train_cmd->add_option("--seed", train_seed)->capture_default_str();
    add_hyperparameter_flags(train_cmd, train_spec);

    // evaluate
    ClassifierSpec eval_spec;
    std::size_t folds = 4;
    std::uint64_t eval_seed = 7;
    std::string fit_scope = "train", models_list = "all", report_out, fold_report_out;
    bool stratified = false;
    auto* evaluate = app.add_subcommand("evaluate", "shuffled k-fold cross-validation");
    evaluate->add_option("--corpus", corpus_path)->required();
    evaluate->add_option("--folds", folds)->capture_default_str();
    evaluate->add_option("--seed", eval_seed)->capture_default_str();
    evaluate->add_option("--fit-scope", fit_scope, "fit vocabulary/idf on training folds or on everything")
        ->capture_default_str()
        ->check(CLI::IsMember({"train", "all"}));
    evaluate->add_option("--models", models_list, "all, or a comma list of knn,rf,svm,mlp")->capture_default_str();
    evaluate->add_option("--out", report_out, "report file (default: stdout)");
    evaluate->add_option("--fold-report", fold_report_out, "per-fold metrics file");
    evaluate->add_flag("--stratified", stratified, "stratify folds by class");
    add_hyperparameter_flags(evaluate, eval_spec);

    // predict
    std::string model_path, query_text;
    std::size_t top = kDefaultTopN;
    auto* predict_cmd = app.add_subcommand("predict", "rank car models for a query");
    predict_cmd->add_option("--model", model_path, "model file");
    predict_cmd->add_option("--text", query_text, "car-speak query")->required();
    predict_cmd->add_option("--top", top)->capture_default_str()->check(CLI::PositiveNumber);

    // serve
    std::vector<std::string> serve_models;
    std::string host = "127.0.0.1", static_dir;
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP query service");
    serve_cmd->add_option("--model", serve_models, "model file (repeat to load several classifiers)")->required();
    serve_cmd->add_option("--port", port)->capture_default_str()->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--host", host)->capture_default_str();
    serve_cmd->add_option("--static", static_dir, "directory of web UI assets served under /");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "carspeak: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        const auto lex = read_lexicon(lexicon_path);

        if (*ingest) {
            const auto raw = read_corpus(ingest_input);
            const auto kept = filter_year_range(raw, min_year, max_year, !drop_missing_year);
            write_output(ingest_output, out, [&](std::ostream& os) { serialize_corpus(kept, os); });
            err << "ingested " << raw.size() << " reviews, kept " << kept.size() << " in " << min_year << "-"
                << max_year << "\n";
        } else if (*stats) {
            const auto s = corpus_stats(read_corpus(corpus_path));
            nlohmann::ordered_json j;
            j["n_reviews"] = s.n_reviews;
            j["n_models"] = s.n_models;
            j["n_makes"] = s.n_makes;
            out << j.dump() << "\n";
        } else if (*topwords) {
            for (const auto& [w, n] : top_k_frequencies(read_corpus(corpus_path), lex, top_k))
                out << w << '\t' << n << '\n';
        } else if (*train_cmd) {
            train_spec.kind = *parse_kind(train_kind);
            train_spec.set_seed(train_seed);
            const auto bundle = train_bundle(read_corpus(corpus_path), lex, train_spec);
            const auto bytes = save_bundle_file(bundle, train_out);
            err << "wrote " << train_kind << " model (" << bundle.labels.size() << " classes, "
                << bundle.vocab.size() << " terms, " << bytes << " bytes) to " << train_out << "\n";
        } else if (*evaluate) {
            std::vector<ClassifierSpec> specs;
            for (auto kind : parse_model_list(models_list)) {
                auto s = eval_spec;
                s.kind = kind;
                s.set_seed(eval_seed);
                specs.push_back(s);
            }
            CrossValidationOptions opt;
            opt.k = folds;
            opt.seed = eval_seed;
            opt.fit_scope = fit_scope == "all" ? FitScope::All : FitScope::TrainOnly;
            opt.stratified = stratified;
            const auto reports = cross_validate(read_corpus(corpus_path), lex, specs, opt);
            write_output(report_out, out, [&](std::ostream& os) { write_report(reports, os); });
            if (!fold_report_out.empty())
                write_output(fold_report_out, out, [&](std::ostream& os) { write_fold_report(reports, os); });
            err << std::fixed << std::setprecision(4);
            err << "classifier  P-macro  R-macro  F1-macro  F1-micro  (pooled; fold mean F1-micro)\n";
            for (const auto& r : reports)
                err << std::left << std::setw(10) << kind_name(r.classifier) << std::right << "  "
                    << r.pooled.precision_macro << "   " << r.pooled.recall_macro << "   " << r.pooled.f1_macro
                    << "    " << r.pooled.f1_micro << "    " << r.fold_mean().f1_micro << "\n";
        } else if (*predict_cmd) {
            if (model_path.empty()) {
                err << "carspeak predict: --model <path> is required\n";
                return kExitData;
            }
            const auto bundle = load_bundle_file(model_path);
            out << query_response_body(bundle, lex, query_text, top) << "\n";
        } else if (*serve_cmd) {
            return serve(serve_models, host, port, static_dir, lex, out);
        }
    } catch (const CLI::ValidationError& e) {
        err << "carspeak: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "carspeak: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

inline int cli_run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    return cli_run(std::move(args), out, err);
}

}  // namespace carspeak
