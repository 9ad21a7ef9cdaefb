#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace deft {

inline constexpr std::string_view kDefaultSummaryEndpoint =
    "https://en.wikipedia.org/api/rest_v1/page/summary/";

/// Name of the environment variable holding the contact string sent in the
/// User-Agent header (the API asks clients to identify themselves).
inline constexpr const char* kContactEnvVar = "DEFT_WIKI_CONTACT";

struct FetchPolicy {
  double rate_limit = 1.0;  // requests per second, > 0
  std::filesystem::path cache_dir;
  bool offline = false;
  std::string user_agent;
  std::string base_url = std::string(kDefaultSummaryEndpoint);
  std::chrono::seconds timeout{10};
};

/// Throws ConfigError when the policy cannot be used.
void validate_policy(const FetchPolicy& policy);

/// "deft-toolkit/<version> (<contact>)"; empty contact gives an empty string.
std::string user_agent_for(std::string_view contact);

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// Throws NetworkError when no response could be obtained.
  virtual HttpResponse get(const std::string& url, const std::string& user_agent) = 0;
};

std::unique_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout);

/// Time source for rate limiting and fetch timestamps.
class Clock {
 public:
  using Instant = std::chrono::steady_clock::time_point;
  virtual ~Clock() = default;
  virtual Instant now() = 0;
  virtual void sleep_until(Instant when) = 0;
  /// ISO-8601 UTC wall time, e.g. "2024-01-31T12:00:00Z".
  virtual std::string utc_timestamp() = 0;
};

class SystemClock final : public Clock {
 public:
  Instant now() override;
  void sleep_until(Instant when) override;
  std::string utc_timestamp() override;
};

/// Spaces acquisitions at least 1/rate seconds apart.
class RateLimiter {
 public:
  RateLimiter(double requests_per_second, Clock& clock);
  void acquire();

 private:
  std::chrono::nanoseconds interval_;
  Clock& clock_;
  std::optional<Clock::Instant> last_;
  std::mutex mutex_;
};

struct CachedResponse {
  int status = 0;
  std::string body;
  std::string url;
  std::string fetched_at;
};

/// Raw response bodies plus a JSON metadata sidecar, keyed by normalized
/// term. Writes go through a temporary file and a rename.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Lowercased, spaces to '_', everything outside [a-z0-9_.-] percent-encoded.
  static std::string key_for(std::string_view term);

  std::optional<CachedResponse> get(std::string_view term) const;
  void put(std::string_view term, const CachedResponse& response);
  bool enabled() const { return !dir_.empty(); }

 private:
  std::filesystem::path dir_;
  std::mutex write_mutex_;
};

/// Page title as used in the endpoint path: first letter upper-cased,
/// spaces to '_', percent-encoded.
std::string title_path(std::string_view term);

/// Text up to and including the first '.' that is followed by whitespace
/// and an upper-case letter and does not end a guarded abbreviation or an
/// initial. Without such a break: the first paragraph, capped at 400 bytes.
std::string first_sentence(std::string_view extract);

enum class FetchStatus { kFound, kNotFound, kAmbiguous };

struct FetchOutcome {
  FetchStatus status = FetchStatus::kNotFound;
  std::string sentence;
  std::string url;
  std::string fetched_at;
  std::string reason;  // set for not-found / ambiguous
  bool from_cache = false;
};

class WikiClient {
 public:
  /// `transport` may be null in offline mode.
  WikiClient(FetchPolicy policy, HttpTransport* transport, Clock& clock);

  /// Cache hits never touch the network. Throws NetworkError for
  /// retryable failures (including a cold cache in offline mode).
  FetchOutcome fetch_first_sentence(std::string_view term);

  std::size_t network_requests() const { return network_requests_; }
  const FetchPolicy& policy() const { return policy_; }

 private:
  FetchPolicy policy_;
  HttpTransport* transport_;
  Clock& clock_;
  RateLimiter limiter_;
  ResponseCache cache_;
  std::size_t network_requests_ = 0;
};

/// Convenience wrapper with the default transport and system clock.
FetchOutcome fetch_first_sentence(std::string_view term, const FetchPolicy& policy);

}  // namespace deft
