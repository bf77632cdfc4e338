// Acceptance battery: replays the round-bound guarantees, the reduction
// equivalence and the ingestion fixtures on generated corpora, one verdict
// line per criterion. Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "labelcast/selfcheck.hpp"

int main(int argc, char** argv) {
  labelcast::AcceptanceConfig cfg;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc)
      cfg.data_dir = argv[++i];
    else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      cfg.seed = std::strtoull(argv[++i], nullptr, 0);
  }
  if (const char* seed_env = std::getenv("LABELCAST_SEED"))
    cfg.seed = std::strtoull(seed_env, nullptr, 0);

  bool all = true;
  try {
    for (const auto& r : labelcast::run_acceptance(cfg)) {
      std::printf("%s criterion %d (%s): %s\n", r.passed ? "PASS" : "FAIL",
                  r.id, r.name.c_str(), r.detail.c_str());
      all &= r.passed;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 2;
  }
  return all ? 0 : 1;
}
