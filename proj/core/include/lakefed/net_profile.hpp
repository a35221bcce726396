#pragma once

#include <string>
#include <vector>

namespace lakefed {

enum class NetworkKind { NONE, GAMMA };

/// A simulated network condition: either no delay at all or per-message
/// latency drawn from Gamma(shape=alpha, scale=beta milliseconds).
struct NetworkProfile {
  std::string name;
  NetworkKind kind = NetworkKind::NONE;
  double alpha = 0.0;  // shape
  double beta = 0.0;   // scale, milliseconds

  double mean_latency_ms() const { return kind == NetworkKind::NONE ? 0.0 : alpha * beta; }

  /// Lowercase file-system-safe name, used in trace file names.
  std::string slug() const;

  static NetworkProfile none(std::string name = "No Delay");
  /// Throws ConfigError unless alpha > 0 and beta > 0.
  static NetworkProfile gamma(std::string name, double alpha, double beta);

  bool operator==(const NetworkProfile&) const = default;
};

/// The four profiles used by the 2020 experiment: No Delay, Gamma 1 (1, 0.3),
/// Gamma 2 (3, 1), Gamma 3 (3, 1.5).
std::vector<NetworkProfile> paper2020_profiles();

}  // namespace lakefed
