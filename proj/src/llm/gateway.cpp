#include "llm/gateway.hpp"

#include <semaphore>

#include "httplib.h"
#include "json.hpp"

namespace acscan::llm {

namespace {

class HttpTransport : public Transport {
public:
    HttpTransport(std::string endpoint, std::string api_key)
        : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)) {}

    HttpResponse post(const std::string& body, std::chrono::milliseconds timeout) override {
        HttpResponse out;
        // split endpoint into host part and path
        std::string url = endpoint_;
        std::string scheme_host = url;
        std::string path = "/";
        auto scheme_end = url.find("://");
        std::size_t path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        if (path_start != std::string::npos) {
            scheme_host = url.substr(0, path_start);
            path = url.substr(path_start);
        }
        httplib::Client client(scheme_host);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout));
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            out.transport_error = httplib::to_string(res.error());
            return out;
        }
        out.status = res->status;
        out.body = res->body;
        return out;
    }

private:
    std::string endpoint_;
    std::string api_key_;
};

} // namespace

std::unique_ptr<Transport> make_http_transport(const std::string& endpoint,
                                               const std::string& api_key) {
    return std::make_unique<HttpTransport>(endpoint, api_key);
}

LlmGateway::LlmGateway(GatewayConfig config, std::unique_ptr<Transport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      slots_(config_.in_flight_cap > 0 ? config_.in_flight_cap : 4) {}

std::unique_ptr<LlmGateway> LlmGateway::create(const GatewayConfig& config, std::string& error) {
    std::unique_ptr<Transport> transport;
    if (config.mode == LlmMode::Live || config.mode == LlmMode::Record) {
        if (config.endpoint.empty()) {
            error = "llm endpoint not configured";
            return nullptr;
        }
        transport = make_http_transport(config.endpoint, config.api_key);
    }
    return create(config, std::move(transport), error);
}

std::unique_ptr<LlmGateway> LlmGateway::create(const GatewayConfig& config,
                                               std::unique_ptr<Transport> transport,
                                               std::string& error) {
    auto gateway = std::make_unique<LlmGateway>(config, std::move(transport));
    if (config.mode == LlmMode::Replay) {
        if (!gateway->transcript_.load(config.transcript_path, error)) return nullptr;
    } else if (config.mode == LlmMode::Record) {
        if (!gateway->transcript_.open_for_record(config.transcript_path, error)) return nullptr;
    }
    return gateway;
}

CompletionResult LlmGateway::complete(const std::string& prompt) {
    CompletionResult out;
    std::string digest = Transcript::digest_of(prompt);

    switch (config_.mode) {
        case LlmMode::Off:
            out.error = {CompletionError::Kind::Disabled, 0, "llm disabled"};
            return out;
        case LlmMode::Replay: {
            std::string response;
            if (!transcript_.lookup(digest, response)) {
                out.error = {CompletionError::Kind::ReplayMiss, 0, digest};
                return out;
            }
            out.ok = true;
            out.text = std::move(response);
            return out;
        }
        case LlmMode::Live:
        case LlmMode::Record: {
            auto started = std::chrono::steady_clock::now();
            out = live_call(prompt);
            if (out.ok && config_.mode == LlmMode::Record) {
                auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started);
                transcript_.append(TranscriptEntry{digest, prompt, out.text, elapsed.count()});
            }
            return out;
        }
    }
    return out;
}

CompletionResult LlmGateway::live_call(const std::string& prompt) {
    CompletionResult out;
    nlohmann::json request = {
        {"model", config_.model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
    };
    std::string body = request.dump();

    slots_.acquire();
    HttpResponse response;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        response = transport_->post(body, config_.timeout);
        if (response.transport_error.empty()) break;
    }
    slots_.release();

    if (!response.transport_error.empty()) {
        out.error = {CompletionError::Kind::ProviderTimeout, 0, response.transport_error};
        return out;
    }
    if (response.status < 200 || response.status >= 300) {
        out.error = {CompletionError::Kind::ProviderError, response.status, response.body};
        return out;
    }
    auto j = nlohmann::json::parse(response.body, nullptr, false);
    if (j.is_discarded()) {
        out.error = {CompletionError::Kind::ProviderError, response.status,
                     "unparsable provider response"};
        return out;
    }
    if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty() &&
        j["choices"][0].contains("message")) {
        out.ok = true;
        out.text = j["choices"][0]["message"].value("content", "");
        return out;
    }
    if (j.contains("content") && j["content"].is_string()) {  // simpler providers
        out.ok = true;
        out.text = j["content"].get<std::string>();
        return out;
    }
    out.error = {CompletionError::Kind::ProviderError, response.status,
                 "response missing completion content"};
    return out;
}

} // namespace acscan::llm
