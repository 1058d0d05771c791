#include <doctest.h>

#include <atomic>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

#include "bwformal/backend.hpp"

using namespace bwformal;
using nlohmann::json;

namespace {

std::string completion_body(const std::string& content) {
  json j;
  j["choices"] = json::array({{{"message", {{"role", "assistant"},
                                            {"content", content}}}}});
  return j.dump();
}

struct TestServer {
  httplib::Server server;
  std::thread thread;
  int port = 0;

  explicit TestServer(httplib::Server::Handler handler) {
    server.Post("/v1/chat/completions", std::move(handler));
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

}  // namespace

TEST_CASE("mock backends answer canned prompts, then the rule, then fail") {
  MockBackend mock("mock-test", [](const std::string&, const std::string& user) {
    CompletionResult res;
    if (user == "ruled") {
      res.ok = true;
      res.text = "by rule";
    } else {
      res.error = "rule declined";
    }
    return res;
  });
  mock.add_canned("hello", "canned reply");

  CompletionParams params;
  CompletionResult canned = mock.complete("sys", "hello", params);
  CHECK(canned.ok);
  CHECK(canned.text == "canned reply");
  CHECK(canned.raw_request == "sys\n---\nhello");
  CHECK(canned.raw_response == "canned reply");

  CompletionResult ruled = mock.complete("sys", "ruled", params);
  CHECK(ruled.ok);
  CHECK(ruled.text == "by rule");

  MockBackend empty("mock-empty");
  CompletionResult miss = empty.complete("sys", "anything", params);
  CHECK(!miss.ok);
  CHECK(!miss.error.empty());
}

TEST_CASE("http backend round-trips a chat completion") {
  std::atomic<int> calls{0};
  json seen_body;
  std::string seen_auth;
  TestServer server([&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    seen_body = json::parse(req.body);
    seen_auth = req.get_header_value("Authorization");
    res.set_content(completion_body("<plan>\n</plan>"), "application/json");
  });

  ::setenv("BWFORMAL_TEST_KEY", "sekret", 1);
  HttpBackendConfig config;
  config.base_url = server.url();
  config.model = "test-model";
  config.api_key_env = "BWFORMAL_TEST_KEY";
  HttpBackend backend(config);
  CHECK(backend.id() == "http:test-model");

  CompletionParams params;
  params.temperature = 0.25;
  params.max_tokens = 321;
  CompletionResult result = backend.complete("be precise", "do the thing",
                                             params);
  REQUIRE(result.ok);
  CHECK(result.text == "<plan>\n</plan>");
  CHECK(calls == 1);
  CHECK(result.latency_ms > 0.0);
  CHECK(seen_auth == "Bearer sekret");
  CHECK(seen_body["model"] == "test-model");
  CHECK(seen_body["temperature"] == 0.25);
  CHECK(seen_body["max_tokens"] == 321);
  REQUIRE(seen_body["messages"].size() == 2);
  CHECK(seen_body["messages"][0]["role"] == "system");
  CHECK(seen_body["messages"][0]["content"] == "be precise");
  CHECK(seen_body["messages"][1]["content"] == "do the thing");
  ::unsetenv("BWFORMAL_TEST_KEY");
}

TEST_CASE("server errors are retried, client errors are not") {
  std::atomic<int> calls{0};
  TestServer flaky([&](const httplib::Request&, httplib::Response& res) {
    if (++calls == 1) {
      res.status = 500;
      res.set_content("overloaded", "text/plain");
    } else {
      res.set_content(completion_body("recovered"), "application/json");
    }
  });

  HttpBackendConfig config;
  config.base_url = flaky.url();
  config.model = "m";
  config.max_retries = 3;
  config.backoff_ms = 1;
  HttpBackend backend(config);
  CompletionResult result = backend.complete("s", "u", {});
  CHECK(result.ok);
  CHECK(result.text == "recovered");
  CHECK(calls == 2);

  std::atomic<int> notfound_calls{0};
  TestServer notfound([&](const httplib::Request&, httplib::Response& res) {
    ++notfound_calls;
    res.status = 404;
    res.set_content("nope", "text/plain");
  });
  HttpBackendConfig nf_config;
  nf_config.base_url = notfound.url();
  nf_config.max_retries = 3;
  nf_config.backoff_ms = 1;
  HttpBackend nf_backend(nf_config);
  CompletionResult nf_result = nf_backend.complete("s", "u", {});
  CHECK(!nf_result.ok);
  CHECK(nf_result.error == "http status 404");
  CHECK(notfound_calls == 1);
}

TEST_CASE("retries exhaust against a permanently failing server") {
  std::atomic<int> calls{0};
  TestServer broken([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 503;
  });
  HttpBackendConfig config;
  config.base_url = broken.url();
  config.max_retries = 2;
  config.backoff_ms = 1;
  HttpBackend backend(config);
  CompletionResult result = backend.complete("s", "u", {});
  CHECK(!result.ok);
  CHECK(result.error == "http status 503");
  CHECK(calls == 2);
}

TEST_CASE("malformed completion bodies fail without throwing") {
  TestServer garbled([&](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"unexpected\": true}", "application/json");
  });
  HttpBackendConfig config;
  config.base_url = garbled.url();
  config.max_retries = 1;
  HttpBackend backend(config);
  CompletionResult result = backend.complete("s", "u", {});
  CHECK(!result.ok);
  CHECK(result.error.find("malformed completion body") == 0);
  CHECK(result.raw_response == "{\"unexpected\": true}");
}
