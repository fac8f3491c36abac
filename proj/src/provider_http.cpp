#include "percept/provider.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

// httplib drags in <resolv.h>, whose _res macro corrupts Eigen's headers, so
// it must come after everything that includes Eigen.
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "percept/errors.hpp"

namespace percept {

namespace {

bool retryable_status(int status) { return status == 429 || status >= 500; }

std::string snippet(const std::string& body) {
    return body.size() <= 200 ? body : body.substr(0, 200) + "...";
}

}  // namespace

HttpProvider::HttpProvider(HttpOptions options) : options_(std::move(options)) {
    if (!options_.sleep_ms) {
        options_.sleep_ms = [](int ms) {
            std::this_thread::sleep_for(std::chrono::milliseconds(ms));
        };
    }
}

std::string HttpProvider::complete(const Request& req) {
    const char* credential = std::getenv(options_.credential_env.c_str());
    if (!credential || !*credential)
        throw ProviderError("credential environment variable " + options_.credential_env +
                            " is not set");
    const nlohmann::json body{
        {"model", options_.model},
        {"temperature", options_.temperature},
        {"messages", nlohmann::json::array({nlohmann::json{{"role", "user"},
                                                           {"content", req.prompt}}})}};
    const std::string payload = body.dump();
    const httplib::Headers headers{
        {"Authorization", std::string("Bearer ") + credential}};

    int backoff_ms = 1000;
    for (int attempt = 0;; ++attempt) {
        // One client per call: avoids sharing connection state across the
        // campaign's in-flight threads.
        httplib::Client client(options_.base_url);
        client.set_connection_timeout(options_.timeout_s, 0);
        client.set_read_timeout(options_.timeout_s, 0);
        auto result =
            client.Post(options_.endpoint_path, headers, payload, "application/json");

        std::string failure;
        if (!result) {
            failure = "transport error: " + httplib::to_string(result.error());
        } else if (result->status == 200) {
            nlohmann::json response;
            try {
                response = nlohmann::json::parse(result->body);
                return response.at("choices").at(0).at("message").at("content")
                    .get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw ProviderError("malformed completion body (" + std::string(e.what()) +
                                    "): " + snippet(result->body));
            }
        } else if (result->status == 401 || result->status == 403) {
            throw ProviderError("authentication failed (HTTP " +
                                std::to_string(result->status) + ")");
        } else if (retryable_status(result->status)) {
            failure = "HTTP " + std::to_string(result->status);
        } else {
            throw ProviderError("HTTP " + std::to_string(result->status) + ": " +
                                snippet(result->body));
        }

        if (attempt + 1 >= options_.max_attempts)
            throw ProviderError("giving up after " + std::to_string(options_.max_attempts) +
                                " attempts; last failure: " + failure);
        ++retries_;
        options_.sleep_ms(backoff_ms);
        backoff_ms = std::min(backoff_ms * 2, 32000);
    }
}

}  // namespace percept
