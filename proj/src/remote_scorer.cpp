#include "quale/remote_scorer.hpp"

#include <httplib.h>

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <thread>

#include "quale/error.hpp"

namespace quale {

using json = nlohmann::json;

namespace {

// Counting gate for in-flight requests.
class Gate {
 public:
  explicit Gate(std::size_t slots) : free_(slots) {}
  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t free_;
};

struct Endpoint {
  std::string host_port;  // scheme://host:port for httplib
  std::string prefix;     // path prefix without trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http")
    throw Error(Errc::InvalidArgument, "endpoint must be an http:// URL, got '" + url + "'");
  auto path = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.host_port = url.substr(0, path);
  if (path != std::string::npos) {
    ep.prefix = url.substr(path);
    while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  }
  if (ep.host_port.size() == scheme_end + 3)
    throw Error(Errc::InvalidArgument, "endpoint has no host: '" + url + "'");
  return ep;
}

double checked_score(const json& v, const std::string& context) {
  if (!v.is_number()) throw Error(Errc::ProtocolError, context + ": score is not a number");
  auto s = v.get<double>();
  if (!std::isfinite(s) || s < 0.0 || s > 1.0)
    throw Error(Errc::ProtocolError, context + ": score " + std::to_string(s) + " outside [0, 1]");
  return s;
}

}  // namespace

struct RemoteScorer::Impl {
  explicit Impl(const RemoteOptions& o) : endpoint(split_endpoint(o.endpoint)), gate(o.max_in_flight) {}

  Endpoint endpoint;
  Gate gate;

  // One request with retries; returns the parsed body of a 200 response.
  json call(const RemoteOptions& o, const std::string& path, const json* body) {
    gate.acquire();
    struct Release {
      Gate& g;
      ~Release() { g.release(); }
    } release{gate};

    httplib::Client client(endpoint.host_port);
    client.set_connection_timeout(o.timeout);
    client.set_read_timeout(o.timeout);
    client.set_write_timeout(o.timeout);

    auto full = endpoint.prefix + path;
    Errc last_code = Errc::RemoteUnavailable;
    std::string last_message;
    for (int attempt = 0; attempt <= o.retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(o.retry_backoff * attempt);
      auto started = std::chrono::steady_clock::now();
      auto res = body ? client.Post(full, body->dump(), "application/json") : client.Get(full);
      if (!res) {
        auto elapsed = std::chrono::steady_clock::now() - started;
        auto err = res.error();
        bool timed_out = err == httplib::Error::ConnectionTimeout ||
                         ((err == httplib::Error::Read || err == httplib::Error::Write) &&
                          elapsed >= o.timeout * 9 / 10);
        last_code = timed_out ? Errc::Timeout : Errc::RemoteUnavailable;
        last_message = "request to " + endpoint.host_port + full + " failed: " + httplib::to_string(err);
        continue;
      }
      if (res->status >= 500) {
        last_code = Errc::RemoteUnavailable;
        last_message = endpoint.host_port + full + " answered HTTP " + std::to_string(res->status) +
                       ": " + res->body;
        continue;
      }
      if (res->status != 200) {
        throw Error(Errc::ProtocolError, endpoint.host_port + full + " answered HTTP " +
                                             std::to_string(res->status) + ": " + res->body);
      }
      try {
        return json::parse(res->body);
      } catch (const json::parse_error& e) {
        throw Error(Errc::ProtocolError, full + " returned malformed JSON: " + e.what());
      }
    }
    throw Error(last_code, last_message + " (after " + std::to_string(o.retries + 1) + " attempts)");
  }
};

RemoteScorer::RemoteScorer(RemoteOptions options)
    : options_(std::move(options)) {
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
  if (options_.max_batch == 0) options_.max_batch = 1;
  if (options_.retries < 0) options_.retries = 0;
  impl_ = std::make_unique<Impl>(options_);
}

RemoteScorer::~RemoteScorer() = default;

double RemoteScorer::score(std::string_view premise, std::string_view hypothesis) const {
  json body = {{"premise", premise}, {"hypothesis", hypothesis}};
  auto res = impl_->call(options_, "/score", &body);
  if (!res.is_object() || !res.contains("score"))
    throw Error(Errc::ProtocolError, "/score response lacks a 'score' field");
  return checked_score(res["score"], "/score");
}

std::vector<double> RemoteScorer::score_batch(std::span<const SentencePair> pairs) const {
  std::vector<double> out(pairs.size());
  if (pairs.empty()) return out;

  const auto chunk = options_.max_batch;
  const auto n_chunks = (pairs.size() + chunk - 1) / chunk;
  std::vector<std::optional<ScorerError>> failures(n_chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (auto c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
      auto begin = c * chunk;
      auto end = std::min(pairs.size(), begin + chunk);
      try {
        json items = json::array();
        for (auto i = begin; i < end; ++i)
          items.push_back({{"premise", pairs[i].premise}, {"hypothesis", pairs[i].hypothesis}});
        json body = {{"pairs", std::move(items)}};
        auto res = impl_->call(options_, "/score_batch", &body);
        if (!res.is_object() || !res.contains("scores") || !res["scores"].is_array())
          throw Error(Errc::ProtocolError, "/score_batch response lacks a 'scores' array");
        const auto& scores = res["scores"];
        if (scores.size() != end - begin)
          throw Error(Errc::ProtocolError, "/score_batch returned " + std::to_string(scores.size()) +
                                               " scores for " + std::to_string(end - begin) +
                                               " pairs");
        for (auto i = begin; i < end; ++i) out[i] = checked_score(scores[i - begin], "/score_batch");
      } catch (const Error& e) {
        failures[c].emplace(e.code(), begin, e.message());
      }
    }
  };

  auto n_threads = std::min(options_.max_in_flight, n_chunks);
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  for (auto& f : failures)
    if (f) throw *f;
  return out;
}

std::string RemoteScorer::health() const {
  auto res = impl_->call(options_, "/health", nullptr);
  if (!res.is_object() || res.value("status", "") != "ok")
    throw Error(Errc::ProtocolError, "/health did not report status ok");
  return res.value("model", "");
}

std::shared_ptr<RemoteScorer> remote_scorer(std::string endpoint, std::chrono::milliseconds timeout,
                                            std::size_t max_in_flight) {
  RemoteOptions o;
  o.endpoint = std::move(endpoint);
  o.timeout = timeout;
  o.max_in_flight = max_in_flight;
  return std::make_shared<RemoteScorer>(std::move(o));
}

}  // namespace quale
