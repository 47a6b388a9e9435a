#pragma once
// Configuration, orchestration and output of the cgslab command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cgs/error.hpp"

namespace cgslab {

using nlohmann::json;

enum class Command { Symmetry, Classical, Loops, Mc, Ed, Wxy, Wkb, Circuit };
enum class OutputFormat { Json, Csv };

const char* command_name(Command c);

/// A validated run description. `params` holds every command key with
/// defaults filled in; `echo` is the normalized config written back to the
/// manifest.
struct RunConfig {
  Command command = Command::Symmetry;
  int lx = 0;  // 0 when the command has no lattice
  int ly = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  OutputFormat format = OutputFormat::Json;
  std::string out_dir = "cgslab-out";
  json params = json::object();

  json echo() const;
};

/// Parses JSON text. Throws cgs::Error of kind Config naming the offending
/// key and the expected type. `seed_override` replaces the config seed.
RunConfig parse_config(const std::string& text,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

struct FileDigest {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct TaskTiming {
  std::string name;
  double wall_seconds = 0.0;
};

struct RunManifest {
  std::string run_id;
  std::string version;
  std::string timestamp;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  json config;
  std::vector<TaskTiming> tasks;
  std::vector<FileDigest> files;

  json to_json() const;
};

/// Runs the command, writes result files and manifest.json into the output
/// directory. Results depend only on (config, seed), never on `workers`.
RunManifest run(const RunConfig& config, unsigned workers);

/// Deterministic id from the normalized config.
std::string run_id(const RunConfig& config);

std::string sha256_hex(const std::string& bytes);

/// 0 success, 2 config, 3 numeric, 4 size guard.
int exit_code(cgs::ErrorKind kind);

/// CGSLAB_WORKERS when `flag` is absent, else the flag; at least 1.
unsigned resolve_workers(std::optional<unsigned> flag);

}  // namespace cgslab
