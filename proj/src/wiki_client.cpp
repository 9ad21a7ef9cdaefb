#include "deft/wiki_client.hpp"

#include <array>
#include <cmath>
#include <ctime>
#include <thread>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"
#include "json.hpp"

namespace deft {

namespace {

constexpr std::size_t kFallbackLimit = 400;

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "e.g.", "i.e.", "dr.",  "mr.",   "mrs.", "ms.",   "prof.", "st.",
    "jr.",  "sr.",  "vs.",  "etc.",  "approx.", "ca.", "c.",  "no.",
    "fig.", "inc.", "ltd.", "co.",   "u.s.", "u.k.",  "mt.",   "cf."};

bool is_guarded(std::string_view word) {
  if (word.size() == 2 && is_upper(word[0])) return true;  // initial, "F."
  const std::string lower = to_lower(word);
  for (auto abbreviation : kAbbreviations) {
    if (lower == abbreviation) return true;
  }
  return false;
}

bool is_unreserved(char c) {
  return is_digit(c) || is_lower(c) || is_upper(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

std::string percent_encode(std::string_view text, bool (*keep)(char)) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : text) {
    if (keep(c)) {
      out += c;
    } else {
      auto u = static_cast<unsigned char>(c);
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    }
  }
  return out;
}

bool is_key_char(char c) { return is_digit(c) || is_lower(c) || c == '_' || c == '-' || c == '.'; }

FetchOutcome interpret(const CachedResponse& response) {
  FetchOutcome outcome;
  outcome.url = response.url;
  outcome.fetched_at = response.fetched_at;
  if (response.status == 404) {
    outcome.reason = "not found";
    return outcome;
  }
  if (response.status != 200) {
    outcome.reason = "not found (http " + std::to_string(response.status) + ")";
    return outcome;
  }
  auto summary = nlohmann::json::parse(response.body, nullptr, /*allow_exceptions=*/false);
  if (summary.is_discarded() || !summary.is_object()) {
    outcome.reason = "not found (unreadable summary)";
    return outcome;
  }
  if (summary.value("type", std::string()) == "disambiguation") {
    outcome.status = FetchStatus::kAmbiguous;
    outcome.reason = "ambiguous";
    return outcome;
  }
  const std::string extract = summary.value("extract", std::string());
  std::string sentence = first_sentence(extract);
  if (sentence.empty()) {
    outcome.reason = "not found (empty extract)";
    return outcome;
  }
  auto page = summary.value(nlohmann::json::json_pointer("/content_urls/desktop/page"), std::string());
  if (!page.empty()) outcome.url = page;
  outcome.status = FetchStatus::kFound;
  outcome.sentence = std::move(sentence);
  return outcome;
}

}  // namespace

void validate_policy(const FetchPolicy& policy) {
  if (!(policy.rate_limit > 0.0) || !std::isfinite(policy.rate_limit)) {
    throw ConfigError("rate limit must be a positive number of requests per second");
  }
  if (!policy.offline) {
    if (policy.user_agent.empty()) {
      throw ConfigError(std::string("live fetching needs a contact string in ") + kContactEnvVar);
    }
    if (policy.base_url.rfind("http://", 0) != 0 && policy.base_url.rfind("https://", 0) != 0) {
      throw ConfigError("base URL must start with http:// or https://");
    }
  }
}

std::string user_agent_for(std::string_view contact) {
  auto trimmed = trim(contact);
  if (trimmed.empty()) return {};
  return "deft-toolkit/0.1 (" + std::string(trimmed) + ")";
}

Clock::Instant SystemClock::now() { return std::chrono::steady_clock::now(); }

void SystemClock::sleep_until(Instant when) { std::this_thread::sleep_until(when); }

std::string SystemClock::utc_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RateLimiter::RateLimiter(double requests_per_second, Clock& clock)
    : interval_(std::chrono::nanoseconds(
          static_cast<std::int64_t>(std::ceil(1e9 / requests_per_second)))),
      clock_(clock) {}

void RateLimiter::acquire() {
  std::lock_guard lock(mutex_);
  if (last_) {
    auto ready = *last_ + interval_;
    if (clock_.now() < ready) clock_.sleep_until(ready);
  }
  last_ = clock_.now();
}

std::string ResponseCache::key_for(std::string_view term) {
  std::string normalized = collapse_whitespace(to_lower(term));
  for (auto& c : normalized) {
    if (c == ' ') c = '_';
  }
  return percent_encode(normalized, &is_key_char);
}

std::optional<CachedResponse> ResponseCache::get(std::string_view term) const {
  if (!enabled()) return std::nullopt;
  const std::string key = key_for(term);
  const auto meta_path = dir_ / (key + ".meta.json");
  const auto body_path = dir_ / (key + ".body");
  if (!std::filesystem::exists(meta_path) || !std::filesystem::exists(body_path)) {
    return std::nullopt;
  }
  auto meta = nlohmann::json::parse(read_file(meta_path), nullptr, false);
  if (meta.is_discarded() || !meta.is_object()) {
    throw DataError("corrupt cache metadata: " + meta_path.string());
  }
  CachedResponse response;
  response.status = meta.value("status", 0);
  response.url = meta.value("url", std::string());
  response.fetched_at = meta.value("fetched_at", std::string());
  response.body = read_file(body_path);
  return response;
}

void ResponseCache::put(std::string_view term, const CachedResponse& response) {
  if (!enabled()) return;
  std::lock_guard lock(write_mutex_);
  std::filesystem::create_directories(dir_);
  const std::string key = key_for(term);
  nlohmann::json meta = {{"term", std::string(term)},
                         {"status", response.status},
                         {"url", response.url},
                         {"fetched_at", response.fetched_at}};
  auto commit = [&](const std::string& name, std::string_view content) {
    auto tmp = dir_ / (name + ".tmp");
    write_file(tmp, content);
    std::filesystem::rename(tmp, dir_ / name);
  };
  commit(key + ".body", response.body);
  commit(key + ".meta.json", meta.dump(2) + "\n");
}

std::string title_path(std::string_view term) {
  std::string title = collapse_whitespace(term);
  if (!title.empty() && is_lower(title[0])) title[0] = static_cast<char>(title[0] - 'a' + 'A');
  for (auto& c : title) {
    if (c == ' ') c = '_';
  }
  return percent_encode(title, &is_unreserved);
}

std::string first_sentence(std::string_view extract) {
  for (std::size_t i = 0; i < extract.size(); ++i) {
    if (extract[i] != '.') continue;
    std::size_t j = i + 1;
    if (j >= extract.size() || !is_space(extract[j])) continue;
    while (j < extract.size() && is_space(extract[j])) ++j;
    if (j >= extract.size() || !is_upper(extract[j])) continue;
    std::size_t word_start = i;
    while (word_start > 0 && !is_space(extract[word_start - 1]) && extract[word_start - 1] != '(') {
      --word_start;
    }
    if (is_guarded(extract.substr(word_start, i + 1 - word_start))) continue;
    return std::string(trim(extract.substr(0, i + 1)));
  }
  std::string_view paragraph = extract.substr(0, extract.find('\n'));
  if (paragraph.size() > kFallbackLimit) {
    std::size_t cut = kFallbackLimit;
    while (cut > 0 && (static_cast<unsigned char>(paragraph[cut]) & 0xC0) == 0x80) --cut;
    paragraph = paragraph.substr(0, cut);
  }
  return std::string(trim(paragraph));
}

WikiClient::WikiClient(FetchPolicy policy, HttpTransport* transport, Clock& clock)
    : policy_(std::move(policy)),
      transport_(transport),
      clock_(clock),
      limiter_((validate_policy(policy_), policy_.rate_limit), clock),
      cache_(policy_.cache_dir) {}

FetchOutcome WikiClient::fetch_first_sentence(std::string_view term) {
  if (trim(term).empty()) throw DataError("cannot fetch an empty term");
  if (auto cached = cache_.get(term)) {
    auto outcome = interpret(*cached);
    outcome.from_cache = true;
    return outcome;
  }
  if (policy_.offline) {
    throw NetworkError("offline mode and '" + std::string(term) + "' is not cached");
  }
  if (!transport_) throw NetworkError("no HTTP transport configured");

  const std::string url = policy_.base_url + title_path(term);
  limiter_.acquire();
  ++network_requests_;
  HttpResponse response = transport_->get(url, policy_.user_agent);
  if (response.status == 429 || response.status >= 500) {
    throw NetworkError("http " + std::to_string(response.status) + " for " + url);
  }
  CachedResponse record{response.status, std::move(response.body), url, clock_.utc_timestamp()};
  cache_.put(term, record);
  return interpret(record);
}

FetchOutcome fetch_first_sentence(std::string_view term, const FetchPolicy& policy) {
  SystemClock clock;
  std::unique_ptr<HttpTransport> transport;
  if (!policy.offline) transport = make_http_transport(policy.timeout);
  WikiClient client(policy, transport.get(), clock);
  return client.fetch_first_sentence(term);
}

}  // namespace deft
