#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace bwformal {

struct CompletionParams {
  double temperature = 0.0;
  int max_tokens = 8192;
};

struct CompletionResult {
  bool ok = false;
  std::string text;
  std::string error;
  double latency_ms = 0.0;
  // Raw bodies for the audit trail; mocks echo their inputs here.
  std::string raw_request;
  std::string raw_response;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual CompletionResult complete(const std::string& system_prompt,
                                    const std::string& user_prompt,
                                    const CompletionParams& params) = 0;
  virtual std::string id() const = 0;
};

/// Deterministic scripted backend: exact-match canned map first, then an
/// optional rule.
class MockBackend : public Backend {
 public:
  using Rule = std::function<CompletionResult(const std::string& system,
                                              const std::string& user)>;

  explicit MockBackend(std::string id) : id_(std::move(id)) {}
  MockBackend(std::string id, Rule rule)
      : id_(std::move(id)), rule_(std::move(rule)) {}

  void add_canned(const std::string& user_prompt, const std::string& reply) {
    canned_[user_prompt] = reply;
  }

  CompletionResult complete(const std::string& system_prompt,
                            const std::string& user_prompt,
                            const CompletionParams& params) override;
  std::string id() const override { return id_; }

 private:
  std::string id_;
  Rule rule_;
  std::map<std::string, std::string> canned_;
};

struct HttpBackendConfig {
  std::string base_url;  // e.g. http://localhost:8080
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "BWFORMAL_API_KEY";
  double temperature = 0.0;
  int max_tokens = 8192;
  int max_retries = 3;
  int backoff_ms = 500;  // doubled per retry
  int timeout_s = 120;
};

/// Chat-completions style HTTP backend. The key is read from the
/// environment at call time; request and response bodies are kept on the
/// result for the audit log.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config)
      : config_(std::move(config)) {}

  CompletionResult complete(const std::string& system_prompt,
                            const std::string& user_prompt,
                            const CompletionParams& params) override;
  std::string id() const override { return "http:" + config_.model; }

  const HttpBackendConfig& config() const { return config_; }

 private:
  HttpBackendConfig config_;
};

}  // namespace bwformal
