// Acceptance-suite driver: runs every pinned criterion at the chosen
// budget and exits nonzero if any verdict fails.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <thread>

#include "acceptance_suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite for the moment-curve laboratory"};
  std::string budget = "full";
  momentlab::suite::Options opt;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--budget", budget, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->envname("MOMENTLAB_BUDGET");
  app.add_option("--seed", opt.seed, "master seed")->envname("MOMENTLAB_SEED");
  app.add_option("--out", opt.out_dir, "artifact directory");
  app.add_option("--workers", workers, "worker thread count")
      ->envname("MOMENTLAB_WORKERS");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  opt.quick = budget == "quick";
  momentlab::worker_count() = static_cast<int>(workers);

  auto t0 = std::chrono::steady_clock::now();
  int rc;
  try {
    rc = momentlab::suite::run_acceptance(opt);
  } catch (const momentlab::InvalidConfiguration& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << '\n';
    return 1;
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cerr << "# run: acceptance\n# seed: " << opt.seed
            << "\n# budget: " << budget << "\n# wall-time-s: " << wall << '\n';
  return rc;
}
