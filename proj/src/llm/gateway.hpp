#pragma once

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>

#include "llm/transcript.hpp"

namespace acscan::llm {

enum class LlmMode { Off, Live, Record, Replay };

struct HttpResponse {
    int status = 0;
    std::string body;
    std::string transport_error;  // nonempty on connection/timeout failure
};

// Transport seam: live runs go over HTTP, tests inject scripted transports.
class Transport {
public:
    virtual ~Transport() = default;
    virtual HttpResponse post(const std::string& body, std::chrono::milliseconds timeout) = 0;
};

// Chat-completions HTTP transport over `endpoint` (e.g.
// http://host:port/v1/chat/completions) with a bearer credential.
std::unique_ptr<Transport> make_http_transport(const std::string& endpoint,
                                               const std::string& api_key);

struct GatewayConfig {
    LlmMode mode = LlmMode::Off;
    std::string transcript_path;
    std::string endpoint;
    std::string api_key;
    std::string model = "default";
    int max_retries = 2;  // transport errors only, never ReplayMiss
    std::chrono::milliseconds timeout = std::chrono::seconds(120);
    int in_flight_cap = 4;
};

struct CompletionError {
    enum class Kind { None, ProviderTimeout, ProviderError, ReplayMiss, Disabled };
    Kind kind = Kind::None;
    int status = 0;
    std::string detail;
};

struct CompletionResult {
    bool ok = false;
    std::string text;
    CompletionError error;
};

// The single seam through which the pipeline talks to a provider. Holds the
// only credentials in the process; all other modules stay offline.
class LlmGateway {
public:
    LlmGateway(GatewayConfig config, std::unique_ptr<Transport> transport);

    // Construct from config alone; builds an HTTP transport for live/record.
    static std::unique_ptr<LlmGateway> create(const GatewayConfig& config, std::string& error);

    // Same setup with an injected transport (tests, alternative providers).
    static std::unique_ptr<LlmGateway> create(const GatewayConfig& config,
                                              std::unique_ptr<Transport> transport,
                                              std::string& error);

    CompletionResult complete(const std::string& prompt);

    LlmMode mode() const { return config_.mode; }
    const Transcript& transcript() const { return transcript_; }

private:
    CompletionResult live_call(const std::string& prompt);

    GatewayConfig config_;
    std::unique_ptr<Transport> transport_;
    Transcript transcript_;
    std::counting_semaphore<> slots_{4};  // live in-flight cap
};

} // namespace acscan::llm
