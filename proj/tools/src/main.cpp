#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cgslab/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cgslab: combinatorial gauge symmetry toolkit"};
  app.set_version_flag("--version", std::string(CGSLAB_VERSION_STRING));
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--workers", workers, "Worker threads (default: CGSLAB_WORKERS or 1)")
      ->check(CLI::Range(1u, 4096u));
  app.add_option("--seed", seed, "Override the config seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    cgslab::RunConfig config = cgslab::parse_config(text.str(), seed);
    if (out_dir) config.out_dir = *out_dir;
    const unsigned n = cgslab::resolve_workers(workers);
    const cgslab::RunManifest m = cgslab::run(config, n);
    std::cout << "run " << m.run_id << ": " << m.files.size() << " result files in " << config.out_dir << "\n";
    return 0;
  } catch (const cgs::Error& e) {
    std::cerr << "cgslab: " << e.what() << "\n";
    return cgslab::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cgslab: " << e.what() << "\n";
    return 3;
  }
}
