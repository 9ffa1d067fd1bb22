#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "quale/scorers.hpp"

namespace quale {

struct RemoteOptions {
  std::string endpoint;  // http://host:port[/prefix]
  std::chrono::milliseconds timeout{10000};
  std::size_t max_in_flight = 4;
  std::size_t max_batch = 64;  // pairs per /score_batch request
  int retries = 2;             // extra attempts after a transient failure
  std::chrono::milliseconds retry_backoff{100};
};

// Client for an entailment service speaking the JSON protocol:
//   POST /score        {"premise": p, "hypothesis": h}           -> {"score": s}
//   POST /score_batch  {"pairs": [{"premise": .., "hypothesis": ..}]} -> {"scores": [..]}
//   GET  /health       -> {"status": "ok", "model": name}
// Large batches are split into chunks of max_batch pairs; at most
// max_in_flight requests are outstanding at any time across all callers.
class RemoteScorer final : public EntailmentScorer {
 public:
  explicit RemoteScorer(RemoteOptions options);
  ~RemoteScorer() override;

  double score(std::string_view premise, std::string_view hypothesis) const override;
  std::vector<double> score_batch(std::span<const SentencePair> pairs) const override;

  // Model name reported by /health. Throws RemoteUnavailable / ProtocolError.
  std::string health() const;

  const RemoteOptions& options() const { return options_; }

 private:
  struct Impl;
  RemoteOptions options_;
  std::unique_ptr<Impl> impl_;
};

std::shared_ptr<RemoteScorer> remote_scorer(std::string endpoint,
                                            std::chrono::milliseconds timeout = std::chrono::milliseconds{10000},
                                            std::size_t max_in_flight = 4);

}  // namespace quale
