#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wtf/cookie_dynamics.hpp"
#include "wtf/theta.hpp"

namespace wtf {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
  SystemSpec model;
  ThetaSequence theta = ThetaSequence::zeros();
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json echo;  // the parsed document
};

// Throws ConfigError with the offending key in the message.
RunConfig parse_config(const std::string& text);

// Model part of a config: a reference id string or an explicit object.
SystemSpec parse_model(const nlohmann::json& j);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

// wtf-lab <command> [--config path] [--out dir] [--threads N] [--seed S] [--timings]
// `args` excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wtf
