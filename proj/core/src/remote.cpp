#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cskb/classify.hpp"
#include "cskb/error.hpp"

namespace cskb {

namespace {

struct Endpoint {
  std::string origin;       // scheme://host[:port]
  std::string label_path;   // /prefix/label
};

Endpoint parse_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.compare(0, scheme_end, "http") != 0)
    throw ConfigError("remote endpoint must be an http:// URL, got '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.origin = url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? std::string() : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  e.label_path = prefix + "/label";
  return e;
}

std::optional<Polarity> parse_service_label(const std::string& s) {
  if (s == "other") return Polarity::neutral;
  return parse_polarity(s);
}

struct ChunkFailure {
  std::size_t request = 0;
  std::size_t first = 0;
  std::size_t last = 0;
  std::string message;
};

}  // namespace

std::vector<Polarity> remote_label(std::span<const std::string> texts, const RemoteOptions& options) {
  if (options.batch_size == 0) throw ConfigError("remote batch size must be positive");
  std::vector<Polarity> out(texts.size(), Polarity::neutral);
  if (texts.empty()) return out;

  const Endpoint endpoint = parse_endpoint(options.endpoint);
  const std::size_t n_requests = (texts.size() + options.batch_size - 1) / options.batch_size;
  const std::size_t workers = std::clamp<std::size_t>(options.max_in_flight, 1, n_requests);

  std::atomic<std::size_t> next{0};
  std::optional<ChunkFailure> failure;
  std::mutex failure_mutex;

  auto run_chunk = [&](httplib::Client& client, std::size_t req) -> std::optional<std::string> {
    const std::size_t first = req * options.batch_size;
    const std::size_t count = std::min(options.batch_size, texts.size() - first);
    nlohmann::json body;
    body["texts"] = nlohmann::json::array();
    for (std::size_t i = 0; i < count; ++i) body["texts"].push_back(texts[first + i]);
    const std::string payload = body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);

    std::string last_error;
    for (std::size_t attempt = 0; attempt <= options.retries; ++attempt) {
      auto res = client.Post(endpoint.label_path, payload, "application/json");
      if (!res) {
        last_error = "transport failure: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status >= 500) {
        last_error = "HTTP status " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) return "HTTP status " + std::to_string(res->status);
      auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array())
        return std::string("malformed JSON response");
      const auto& labels = j["labels"];
      if (labels.size() != count)
        return "label count mismatch: sent " + std::to_string(count) + " texts, got " +
               std::to_string(labels.size()) + " labels";
      for (std::size_t i = 0; i < count; ++i) {
        if (!labels[i].is_string()) return std::string("non-string label in response");
        auto p = parse_service_label(labels[i].get<std::string>());
        if (!p) return "unknown label '" + labels[i].get<std::string>() + "'";
        out[first + i] = *p;
      }
      return std::nullopt;
    }
    return last_error + " after " + std::to_string(options.retries + 1) + " attempt(s)";
  };

  auto worker = [&] {
    httplib::Client client(endpoint.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    while (true) {
      const std::size_t req = next.fetch_add(1);
      if (req >= n_requests) return;
      if (auto err = run_chunk(client, req)) {
        std::lock_guard lock(failure_mutex);
        const std::size_t first = req * options.batch_size;
        const std::size_t last = std::min(texts.size(), first + options.batch_size) - 1;
        if (!failure || req < failure->request) failure = ChunkFailure{req, first, last, *err};
        next.store(n_requests);
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) throw TransportError(failure->message, failure->request, failure->first, failure->last);
  return out;
}

}  // namespace cskb
