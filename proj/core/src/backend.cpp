#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <mutex>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ilpbench/dataset_io.hpp"
#include "ilpbench/llm.hpp"

namespace ilpbench {

using nlohmann::json;

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

Role parse_role(std::string_view text) {
  if (text == "system") return Role::kSystem;
  if (text == "user") return Role::kUser;
  if (text == "assistant") return Role::kAssistant;
  throw std::invalid_argument("unknown chat role: " + std::string(text));
}

namespace {

constexpr std::pair<BackendKind, std::string_view> kKindNames[] = {
    {BackendKind::kHttp, "http"},
    {BackendKind::kMockScripted, "mock_scripted"},
    {BackendKind::kMockOracle, "mock_oracle"},
    {BackendKind::kMockCorrupt, "mock_corrupt"},
};

}  // namespace

std::string_view backend_kind_name(BackendKind kind) {
  for (const auto& [k, n] : kKindNames) {
    if (k == kind) return n;
  }
  return "http";
}

BackendKind parse_backend_kind(std::string_view text) {
  std::string norm;
  for (char c : text) norm.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& [k, n] : kKindNames) {
    if (n == norm) return k;
  }
  throw std::invalid_argument("unknown backend: " + std::string(text));
}

void BackendConfig::validate() const {
  if (kind == BackendKind::kHttp) {
    if (endpoint.empty()) throw std::invalid_argument("http backend needs an endpoint");
    if (model.empty()) throw std::invalid_argument("http backend needs a model");
  }
  if (!(temperature >= 0.0 && temperature <= 2.0)) throw std::invalid_argument("temperature must be in [0, 2]");
  if (max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
}

std::string BackendConfig::display_label() const {
  if (!label.empty()) return label;
  std::string out(backend_kind_name(kind));
  if (kind == BackendKind::kHttp && !model.empty()) out += ":" + model;
  return out;
}

std::string chat_request_json(const BackendConfig& config, const std::vector<ChatTurn>& history) {
  json messages = json::array();
  for (const ChatTurn& t : history) messages.push_back({{"role", role_name(t.role)}, {"content", t.content}});
  json body;
  body["model"] = config.model;
  body["messages"] = messages;
  body["temperature"] = config.temperature;
  return body.dump();
}

std::vector<std::string> load_scripts(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw std::runtime_error(path.string() + ": expected a JSON array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw std::runtime_error(path.string() + ": expected a JSON array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

namespace {

void require_history(const std::vector<ChatTurn>& history) {
  if (history.empty()) throw std::invalid_argument("chat history is empty");
}

class ScriptedBackend final : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> scripts) : scripts_(std::move(scripts)) {}

  Completion complete(const std::vector<ChatTurn>& history) override {
    require_history(history);
    const std::size_t n = next_.fetch_add(1);
    if (n >= scripts_.size())
      throw BackendError(0, "", "scripted backend has no response #" + std::to_string(n + 1));
    return {scripts_[n], 0.0};
  }

 private:
  std::vector<std::string> scripts_;
  std::atomic<std::size_t> next_{0};
};

class FixedBackend final : public Backend {
 public:
  explicit FixedBackend(std::string text) : text_(std::move(text)) {}

  Completion complete(const std::vector<ChatTurn>& history) override {
    require_history(history);
    return {text_, 0.0};
  }

 private:
  std::string text_;
};

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // base path without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint must be an http(s) URL: " + url);
  const auto slash = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = url.substr(0, slash);
  e.path = slash == std::string::npos ? "" : url.substr(slash);
  while (!e.path.empty() && e.path.back() == '/') e.path.pop_back();
  return e;
}

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config)
      : config_(std::move(config)), endpoint_(split_endpoint(config_.endpoint)), slots_(config_.max_in_flight) {}

  Completion complete(const std::vector<ChatTurn>& history) override {
    require_history(history);
    const std::string body = chat_request_json(config_, history);
    const auto start = std::chrono::steady_clock::now();
    auto delay = config_.retry_delay;
    for (unsigned attempt = 0;; ++attempt) {
      Outcome o = send(body);
      if (o.done) {
        const double latency = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return {std::move(o.text), latency};
      }
      if (!o.transient || attempt >= config_.max_retries) {
        if (o.timed_out) throw TimeoutError("request timed out after " + std::to_string(attempt + 1) + " attempt(s)");
        throw BackendError(o.status, o.text, o.reason);
      }
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
  }

 private:
  struct Outcome {
    bool done = false;
    bool transient = false;
    bool timed_out = false;
    int status = 0;
    std::string text;
    std::string reason;
  };

  Outcome send(const std::string& body) {
    Slot slot(slots_);
    httplib::Client client(endpoint_.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

    Outcome o;
    auto res = client.Post(endpoint_.path + "/chat/completions", headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      o.transient = true;
      o.timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
      o.reason = "request failed: " + httplib::to_string(err);
      return o;
    }
    o.status = res->status;
    if (res->status == 429 || res->status >= 500) {
      o.transient = true;
      o.text = res->body;
      o.reason = "server returned status " + std::to_string(res->status);
      return o;
    }
    if (res->status < 200 || res->status >= 300) {
      o.text = res->body;
      o.reason = "server returned status " + std::to_string(res->status);
      return o;
    }
    try {
      const json j = json::parse(res->body);
      o.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
      o.done = true;
    } catch (const json::exception& e) {
      o.text = res->body;
      o.reason = std::string("malformed completion response: ") + e.what();
    }
    return o;
  }

  class Slot {
   public:
    explicit Slot(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
    ~Slot() { s_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    std::counting_semaphore<>& s_;
  };

  BackendConfig config_;
  Endpoint endpoint_;
  std::counting_semaphore<> slots_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(const BackendConfig& config, const Dataset* dataset) {
  config.validate();
  switch (config.kind) {
    case BackendKind::kHttp:
      return std::make_unique<HttpBackend>(config);
    case BackendKind::kMockScripted:
      return std::make_unique<ScriptedBackend>(config.scripts);
    case BackendKind::kMockOracle:
      if (dataset == nullptr) throw std::invalid_argument("oracle backend needs a dataset");
      return std::make_unique<FixedBackend>(render_program(dataset->truth.rules));
    case BackendKind::kMockCorrupt:
      return std::make_unique<FixedBackend>(config.corrupt_payload);
  }
  throw std::invalid_argument("unknown backend kind");
}

}  // namespace ilpbench
