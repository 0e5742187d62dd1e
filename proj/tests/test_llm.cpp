#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "llm/gateway.hpp"
#include "llm/prompts.hpp"
#include "scripted_transport.hpp"
#include "support/sha256.hpp"

using namespace acscan;
using namespace acscan::llm;

namespace fs = std::filesystem;

TEST_CASE("sha256 matches FIPS vectors") {
    CHECK(Sha256::hex_digest("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(Sha256::hex_digest("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(Sha256::hex_digest("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    std::string million(1000000, 'a');
    CHECK(Sha256::hex_digest(million) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("render_prompt substitutes byte-exactly") {
    const auto& tmpl = builtin_template(PromptId::SensitiveLocation);
    std::string code = "contract EtherCharity { /* verbatim  spacing */ }";
    auto rendered = render_prompt(tmpl, {{"CODE", code}});
    REQUIRE(rendered.ok());
    CHECK(rendered.text.find(code) != std::string::npos);
    CHECK(rendered.text.find("[CODE]") == std::string::npos);
}

TEST_CASE("render_prompt reports missing bindings by name") {
    const auto& tmpl = builtin_template(PromptId::ReflectionFix);
    auto rendered = render_prompt(tmpl, {{"CONTRACT", "c"}, {"NAME", "donate"}});
    CHECK_FALSE(rendered.ok());
    CHECK(rendered.missing_placeholder == "ERROR MESSAGE");

    auto full = render_prompt(tmpl, {{"CONTRACT", "contract X {}"},
                                     {"ERROR MESSAGE", "boom"},
                                     {"NAME", "donate"}});
    REQUIRE(full.ok());
    CHECK(full.text.find("contract X {}") != std::string::npos);
    CHECK(full.text.find("boom") != std::string::npos);
    CHECK(full.text.find("donate") != std::string::npos);
}

TEST_CASE("template with zero placeholders renders unchanged") {
    PromptTemplate tmpl{PromptId::SensitiveLocation, "fixed prompt, no holes", {}};
    auto rendered = render_prompt(tmpl, {});
    REQUIRE(rendered.ok());
    CHECK(rendered.text == "fixed prompt, no holes");
}

TEST_CASE("builtin templates declare exactly their placeholders") {
    const auto& locate = builtin_template(PromptId::SensitiveLocation);
    CHECK(locate.placeholders == std::vector<std::string>{"CODE"});
    CHECK(locate.text.find("[CODE]") != std::string::npos);

    const auto& completion = builtin_template(PromptId::SnippetCompletion);
    CHECK(completion.placeholders == std::vector<std::string>{"CODE"});
    CHECK(completion.text.find("[CODE]") != std::string::npos);

    const auto& reflection = builtin_template(PromptId::ReflectionFix);
    CHECK(reflection.placeholders ==
          std::vector<std::string>{"CONTRACT", "ERROR MESSAGE", "NAME"});
    for (auto ph : {"[CONTRACT]", "[ERROR MESSAGE]", "[NAME]"})
        CHECK(reflection.text.find(ph) != std::string::npos);
}

namespace {

class FailingTransport : public Transport {
public:
    HttpResponse post(const std::string&, std::chrono::milliseconds) override {
        ++attempts;
        HttpResponse out;
        out.transport_error = "connection refused";
        return out;
    }
    int attempts = 0;
};

} // namespace

TEST_CASE("transport errors retry twice then surface as ProviderTimeout") {
    GatewayConfig config;
    config.mode = LlmMode::Live;
    config.max_retries = 2;
    auto transport = std::make_unique<FailingTransport>();
    auto* view = transport.get();
    LlmGateway gateway(config, std::move(transport));
    auto result = gateway.complete("ping");
    CHECK_FALSE(result.ok);
    CHECK(result.error.kind == CompletionError::Kind::ProviderTimeout);
    CHECK(view->attempts == 3);  // initial call plus two retries
}

TEST_CASE("provider error status is preserved") {
    GatewayConfig config;
    config.mode = LlmMode::Live;
    auto transport = std::make_unique<testing::ScriptedTransport>(std::vector<std::string>{});
    LlmGateway gateway(config, std::move(transport));  // exhausted script = HTTP 500
    auto result = gateway.complete("ping");
    CHECK_FALSE(result.ok);
    CHECK(result.error.kind == CompletionError::Kind::ProviderError);
    CHECK(result.error.status == 500);
}

TEST_CASE("record then replay round-trips bit-exactly") {
    fs::path transcript = fs::temp_directory_path() / "acscan-transcript-test.jsonl";
    fs::remove(transcript);

    {
        GatewayConfig config;
        config.mode = LlmMode::Record;
        config.transcript_path = transcript.string();
        auto transport = std::make_unique<testing::ScriptedTransport>(
            std::vector<std::string>{"alpha response", "beta response"});
        std::string error;
        auto gateway = LlmGateway::create(config, std::move(transport), error);
        REQUIRE(gateway != nullptr);

        auto a = gateway->complete("prompt one");
        auto b = gateway->complete("prompt two");
        REQUIRE(a.ok);
        REQUIRE(b.ok);
        CHECK(a.text == "alpha response");
        CHECK(b.text == "beta response");
        CHECK(gateway->transcript().size() == 2);  // one entry per call
    }
    {
        GatewayConfig config;
        config.mode = LlmMode::Replay;
        config.transcript_path = transcript.string();
        std::string error;
        auto gateway = LlmGateway::create(config, error);
        REQUIRE(gateway != nullptr);

        auto b = gateway->complete("prompt two");
        REQUIRE(b.ok);
        CHECK(b.text == "beta response");
        auto a = gateway->complete("prompt one");
        REQUIRE(a.ok);
        CHECK(a.text == "alpha response");

        auto miss = gateway->complete("never recorded");
        CHECK_FALSE(miss.ok);
        CHECK(miss.error.kind == CompletionError::Kind::ReplayMiss);
        CHECK(miss.error.detail == Transcript::digest_of("never recorded"));
    }
    fs::remove(transcript);
}

TEST_CASE("replay of duplicate prompts is FIFO then sticky") {
    fs::path transcript = fs::temp_directory_path() / "acscan-transcript-dup.jsonl";
    {
        Transcript t;
        std::string error;
        REQUIRE(t.open_for_record(transcript.string(), error));
        std::string digest = Transcript::digest_of("same");
        t.append({digest, "same", "first", 1});
        t.append({digest, "same", "second", 1});
    }
    Transcript t;
    std::string error;
    REQUIRE(t.load(transcript.string(), error));
    std::string digest = Transcript::digest_of("same");
    std::string response;
    REQUIRE(t.lookup(digest, response));
    CHECK(response == "first");
    REQUIRE(t.lookup(digest, response));
    CHECK(response == "second");
    REQUIRE(t.lookup(digest, response));  // exhausted: keeps last
    CHECK(response == "second");
    fs::remove(transcript);
}

TEST_CASE("replay mode never calls the network") {
    GatewayConfig config;
    config.mode = LlmMode::Replay;
    config.transcript_path = "/nonexistent/definitely-missing.jsonl";
    std::string error;
    auto gateway = LlmGateway::create(config, error);
    CHECK(gateway == nullptr);
    CHECK_FALSE(error.empty());
}

TEST_CASE("record against a local stub server writes N entries for N calls") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.set_content(
            R"({"choices":[{"message":{"role":"assistant","content":"stubbed"}}]})",
            "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    if (port <= 0) return;  // sandbox without loopback binding: covered by ScriptedTransport above
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fs::path transcript = fs::temp_directory_path() / "acscan-transcript-http.jsonl";
    fs::remove(transcript);
    {
        GatewayConfig config;
        config.mode = LlmMode::Record;
        config.transcript_path = transcript.string();
        config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
        std::string error;
        auto gateway = LlmGateway::create(config, error);
        REQUIRE(gateway != nullptr);
        const int calls = 3;
        for (int i = 0; i < calls; ++i) {
            auto r = gateway->complete("prompt " + std::to_string(i));
            REQUIRE(r.ok);
            CHECK(r.text == "stubbed");
        }
        CHECK(gateway->transcript().size() == 3);
        CHECK(hits == 3);
    }
    // transcript file has exactly one line per call
    std::ifstream in(transcript);
    int lines = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 3);

    server.stop();
    server_thread.join();
    fs::remove(transcript);
}
