#include "lakefed/net_profile.hpp"

#include <cctype>

#include "lakefed/error.hpp"

namespace lakefed {

std::string NetworkProfile::slug() const {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "profile" : out;
}

NetworkProfile NetworkProfile::none(std::string name) {
  return NetworkProfile{std::move(name), NetworkKind::NONE, 0.0, 0.0};
}

NetworkProfile NetworkProfile::gamma(std::string name, double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0) {
    throw ConfigError("gamma profile '" + name + "' needs alpha > 0 and beta > 0");
  }
  return NetworkProfile{std::move(name), NetworkKind::GAMMA, alpha, beta};
}

std::vector<NetworkProfile> paper2020_profiles() {
  return {
      NetworkProfile::none("No Delay"),
      NetworkProfile::gamma("Gamma 1", 1.0, 0.3),
      NetworkProfile::gamma("Gamma 2", 3.0, 1.0),
      NetworkProfile::gamma("Gamma 3", 3.0, 1.5),
  };
}

}  // namespace lakefed
