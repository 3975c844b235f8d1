// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// httplib's default backlog of 5 drops connections under bursts of clients.
#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 512
#endif
#include <httplib.h>
#include <json.hpp>

#include "carspeak/model_store.hpp"
#include "carspeak/query.hpp"
#include "carspeak/textproc.hpp"

namespace carspeak {

/// Loaded bundles shared read-only by every request.
struct ServiceModels {
    std::vector<ModelBundle> bundles;
    std::size_t default_index = 0;
    PosLexicon lexicon = PosLexicon::builtin();

    const ModelBundle* find(std::string_view kind) const {
        for (const auto& b : bundles)
            if (kind_name(b.kind()) == kind) return &b;
        return nullptr;
    }

    /// KNN when loaded, otherwise the first bundle.
    void pick_default() {
        default_index = 0;
        for (std::size_t i = 0; i < bundles.size(); ++i)
            if (bundles[i].kind() == ClassifierKind::Knn) default_index = i;
    }
};

inline constexpr std::size_t kDefaultTopN = 5;

inline std::string error_body(std::string_view code, std::string_view message) {
    nlohmann::ordered_json j;
    j["error"]["code"] = code;
    j["error"]["message"] = message;
    return j.dump();
}

namespace service_detail {

struct BadRequest {
    std::string code;
    std::string message;
};

struct ParsedQuery {
    std::string text;
    std::size_t top_n = kDefaultTopN;
    std::optional<std::string> classifier;
};

inline ParsedQuery parse_query_body(const std::string& body) {
    if (body.empty()) throw BadRequest{"empty_body", "request body is empty"};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
        throw BadRequest{"invalid_json", "request body is not valid JSON"};
    }
    if (!j.is_object()) throw BadRequest{"invalid_request", "request body must be a JSON object"};
    ParsedQuery q;
    auto text = j.find("text");
    if (text == j.end() || !text->is_string()) throw BadRequest{"invalid_request", "field text must be a string"};
    q.text = text->get<std::string>();
    if (auto n = j.find("top_n"); n != j.end()) {
        if (!n->is_number_integer() || n->get<long long>() < 1)
            throw BadRequest{"invalid_request", "field top_n must be a positive integer"};
        q.top_n = n->get<std::size_t>();
    }
    if (auto c = j.find("classifier"); c != j.end() && !c->is_null()) {
        if (!c->is_string()) throw BadRequest{"invalid_request", "field classifier must be a string"};
        q.classifier = c->get<std::string>();
    }
    return q;
}

}  // namespace service_detail

/// JSON body for one query, shared by the HTTP route and the CLI.
inline std::string query_response_body(const ModelBundle& b, const PosLexicon& lex, std::string_view text,
                                       std::size_t top_n) {
    return to_json(answer_query(b, lex, text, top_n)).dump();
}

inline void register_routes(httplib::Server& svr, const ServiceModels& models,
                            const std::optional<std::filesystem::path>& static_dir = std::nullopt) {
    if (models.bundles.empty()) throw std::invalid_argument("service needs at least one model");
    constexpr const char* kJson = "application/json";

    svr.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"status":"ok"})", kJson);
    });

    svr.Get("/api/v1/model", [&models](const httplib::Request&, httplib::Response& res) {
        auto j = model_info_json(models.bundles[models.default_index]);
        j["classifiers"] = nlohmann::ordered_json::array();
        for (const auto& b : models.bundles) j["classifiers"].push_back(kind_name(b.kind()));
        res.set_content(j.dump(), kJson);
    });

    svr.Post("/api/v1/query", [&models](const httplib::Request& req, httplib::Response& res) {
        try {
            const auto q = service_detail::parse_query_body(req.body);
            const ModelBundle* b = &models.bundles[models.default_index];
            if (q.classifier) {
                b = models.find(*q.classifier);
                if (!b)
                    throw service_detail::BadRequest{"unknown_classifier",
                                                     "no loaded model for classifier '" + *q.classifier + "'"};
            }
            res.set_content(query_response_body(*b, models.lexicon, q.text, q.top_n), kJson);
        } catch (const service_detail::BadRequest& e) {
            res.status = 400;
            res.set_content(error_body(e.code, e.message), kJson);
        }
    });

    svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_body("internal", what), "application/json");
    });

    svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
        res.set_content(error_body(res.status == 404 ? "not_found" : "http_error",
                                   std::string(httplib::status_message(res.status))),
                        "application/json");
        return httplib::Server::HandlerResponse::Handled;
    });

    if (static_dir && !svr.set_mount_point("/", static_dir->string()))
        throw std::invalid_argument("static directory " + static_dir->string() + " does not exist");
}

}  // namespace carspeak
