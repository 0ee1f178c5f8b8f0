#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace surd::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNoSplit = 1;  // also budget exhaustion and parity notices
inline constexpr int kExitInvalid = 2;

// Every command prints one of these with --json. Big integers and reals are
// decimal strings; reals travel as {"value", "precision"}.
struct OutputEnvelope {
  std::string command;
  std::string input;
  std::string status;  // ok | no_split | error
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json counters = nlohmann::json::object();
  std::string version = kVersion;

  friend bool operator==(const OutputEnvelope&, const OutputEnvelope&) = default;
};

nlohmann::json to_json(const OutputEnvelope& e);
// Throws nlohmann::json::exception on a malformed document.
OutputEnvelope envelope_from_json(const nlohmann::json& j);

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
  OutputEnvelope envelope;  // also produced in text mode
};

// Runs one command line (without the program name).
CliRun run(const std::vector<std::string>& args);

}  // namespace surd::cli
