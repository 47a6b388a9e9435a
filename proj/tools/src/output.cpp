#include "output.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

namespace cgslab {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string format_number(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number() || v.is_boolean()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

std::string render_csv(const Table& t, const std::string& run_id) {
  std::string out = "# cgslab run_id=" + run_id + " manifest=manifest.json\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

FileDigest write_file(const std::string& dir, const std::string& name, const std::string& bytes) {
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return {name, sha256_hex(bytes), bytes.size()};
}

std::vector<TaskResult> run_tasks(const std::vector<Task>& tasks, unsigned workers,
                                  const std::string& context) {
  std::vector<TaskResult> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        results[i].output = tasks[i].body();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      results[i].name = tasks[i].name;
      results[i].wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i]) continue;
    const std::string where = context + "/" + tasks[i].name + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const cgs::Error& e) {
      throw cgs::Error(e.kind(), where + e.what());
    } catch (const std::bad_alloc&) {
      throw cgs::Error(cgs::ErrorKind::SizeGuard, where + "out of memory");
    } catch (const std::exception& e) {
      throw cgs::Error(cgs::ErrorKind::Numeric, where + e.what());
    }
  }
  return results;
}

json RunManifest::to_json() const {
  json j;
  j["run_id"] = run_id;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["seed"] = seed;
  j["workers"] = workers;
  j["config"] = config;
  j["tasks"] = json::array();
  for (const auto& t : tasks) j["tasks"].push_back({{"name", t.name}, {"wall_seconds", t.wall_seconds}});
  j["files"] = json::array();
  for (const auto& f : files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return j;
}

int exit_code(cgs::ErrorKind kind) {
  switch (kind) {
    case cgs::ErrorKind::Config:
    case cgs::ErrorKind::InvalidArgument:
      return 2;
    case cgs::ErrorKind::Numeric:
      return 3;
    case cgs::ErrorKind::SizeGuard:
      return 4;
  }
  return 3;
}

unsigned resolve_workers(std::optional<unsigned> flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("CGSLAB_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > 4096)
      throw cgs::Error(cgs::ErrorKind::Config, std::string("CGSLAB_WORKERS: expected a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace cgslab
