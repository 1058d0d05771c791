#ifdef BWFORMAL_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include "bwformal/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

namespace bwformal {

using nlohmann::json;

CompletionResult MockBackend::complete(const std::string& system_prompt,
                                       const std::string& user_prompt,
                                       const CompletionParams& params) {
  (void)params;
  CompletionResult result;
  result.raw_request = system_prompt + "\n---\n" + user_prompt;
  auto it = canned_.find(user_prompt);
  if (it != canned_.end()) {
    result.ok = true;
    result.text = it->second;
    result.raw_response = it->second;
    return result;
  }
  if (rule_) {
    result = rule_(system_prompt, user_prompt);
    if (result.raw_request.empty()) {
      result.raw_request = system_prompt + "\n---\n" + user_prompt;
    }
    if (result.raw_response.empty()) result.raw_response = result.text;
    return result;
  }
  result.error = "mock backend has no reply for this prompt";
  return result;
}

CompletionResult HttpBackend::complete(const std::string& system_prompt,
                                       const std::string& user_prompt,
                                       const CompletionParams& params) {
  CompletionResult result;
  auto start = std::chrono::steady_clock::now();

  json body;
  body["model"] = config_.model;
  body["messages"] = json::array({{{"role", "system"}, {"content", system_prompt}},
                                  {{"role", "user"}, {"content", user_prompt}}});
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_tokens;
  result.raw_request = body.dump();

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str());
      key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  int attempts = config_.max_retries < 1 ? 1 : config_.max_retries;
  int backoff = config_.backoff_ms;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
      backoff *= 2;
    }
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(config_.timeout_s, 0);
    client.set_read_timeout(config_.timeout_s, 0);
    client.set_write_timeout(config_.timeout_s, 0);

    auto response = client.Post(config_.path, headers, result.raw_request,
                                "application/json");
    if (!response) {
      result.error = "transport error: " + httplib::to_string(response.error());
      continue;  // retryable
    }
    result.raw_response = response->body;
    if (response->status == 429 || response->status >= 500) {
      result.error = "http status " + std::to_string(response->status);
      continue;  // retryable
    }
    if (response->status != 200) {
      result.error = "http status " + std::to_string(response->status);
      break;  // client error; retrying will not help
    }
    try {
      json parsed = json::parse(response->body);
      result.text = parsed.at("choices").at(0).at("message").at("content")
                        .get<std::string>();
      result.ok = true;
      result.error.clear();
    } catch (const json::exception& e) {
      result.error = std::string("malformed completion body: ") + e.what();
    }
    break;
  }

  result.latency_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return result;
}

}  // namespace bwformal
