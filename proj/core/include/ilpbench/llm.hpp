#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ilpbench/scoring.hpp"
#include "ilpbench/synth.hpp"

namespace ilpbench {

enum class Role { kSystem, kUser, kAssistant };

std::string_view role_name(Role role);
Role parse_role(std::string_view text);

struct ChatTurn {
  Role role = Role::kUser;
  std::string content;

  friend bool operator==(const ChatTurn&, const ChatTurn&) = default;
};

/// Initial prompt: BK facts one per line, then training examples wrapped as
/// `pos(...).` and `neg(...).` lines.
std::string build_initial_prompt(const Dataset& dataset);

/// Feedback prompt with the four metrics at four decimals and the
/// misclassified examples (false negatives as `pos`, false positives as `neg`).
std::string build_refine_prompt(const EvalReport& report);

/// Pulls candidate clause text out of a chat response. Fenced code blocks
/// win; otherwise clause-like lines are kept. Pure clause text is returned
/// unchanged.
std::string extract_theory(std::string_view response);

enum class BackendKind { kHttp, kMockScripted, kMockOracle, kMockCorrupt };

std::string_view backend_kind_name(BackendKind kind);
/// Accepts "mock_scripted" or "mock-scripted" style names. Throws std::invalid_argument.
BackendKind parse_backend_kind(std::string_view text);

/// Default payload of the corrupt mock: clause text that is not well formed.
inline constexpr std::string_view kDefaultCorruptPayload =
    "theory :-\n"
    "    p(X, Y), pos(p0(X, Y)) - positive.\n"
    "    p(X, Y), neg(p0(X, Y)) - negative.\n";

struct BackendConfig {
  BackendKind kind = BackendKind::kHttp;
  std::string endpoint;
  std::string model;
  double temperature = 0.0;
  std::chrono::milliseconds timeout{120'000};
  unsigned max_retries = 3;
  unsigned max_in_flight = 4;
  std::string label;
  /// Delay before the first retry; doubles on every further retry.
  std::chrono::milliseconds retry_delay{500};
  /// Bearer token. Empty means no Authorization header.
  std::string api_key;
  std::vector<std::string> scripts;
  std::string corrupt_payload{kDefaultCorruptPayload};

  /// Throws std::invalid_argument.
  void validate() const;
  /// `label` when set, else the kind name (plus the model for http).
  std::string display_label() const;
};

class BackendError : public std::runtime_error {
 public:
  BackendError(int status, std::string body, const std::string& what)
      : std::runtime_error(what), status_(status), body_(std::move(body)) {}

  /// HTTP status, or 0 when no response was received.
  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

class TimeoutError : public BackendError {
 public:
  explicit TimeoutError(const std::string& what) : BackendError(0, "", what) {}
};

struct Completion {
  std::string text;
  double latency_s = 0.0;
};

class Backend {
 public:
  virtual ~Backend() = default;
  /// `history` must be non-empty. Safe to call from several threads.
  virtual Completion complete(const std::vector<ChatTurn>& history) = 0;
};

/// `dataset` is required for the oracle mock and ignored otherwise.
std::unique_ptr<Backend> make_backend(const BackendConfig& config, const Dataset* dataset = nullptr);

/// Reads a JSON array of response strings.
std::vector<std::string> load_scripts(const std::filesystem::path& path);

/// Request body for the chat-completion endpoint.
std::string chat_request_json(const BackendConfig& config, const std::vector<ChatTurn>& history);

}  // namespace ilpbench
