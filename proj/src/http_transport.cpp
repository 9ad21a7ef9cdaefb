#include "deft/errors.hpp"
#include "deft/wiki_client.hpp"
#include "httplib.h"

namespace deft {

namespace {

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url, const std::string& user_agent) override {
    // Split "scheme://host[:port]" from the path.
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw NetworkError("malformed URL " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    if (!client.is_valid()) throw NetworkError("unsupported URL " + url);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);

    httplib::Headers headers;
    if (!user_agent.empty()) headers.emplace("User-Agent", user_agent);
    headers.emplace("Accept", "application/json");

    auto result = client.Get(path, headers);
    if (!result) {
      throw NetworkError("request to " + url + " failed: " + httplib::to_string(result.error()));
    }
    return {result->status, result->body};
  }

 private:
  std::chrono::seconds timeout_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout) {
  return std::make_unique<HttplibTransport>(timeout);
}

}  // namespace deft
