// Acceptance suite: one PASS/FAIL line per check.
//   pulseloss_acceptance [--only <id|group>]

#include <cstring>
#include <iostream>

#include "pulseloss/validation.hpp"

int main(int argc, char** argv) {
  pulseloss::ValidationOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      opts.only = argv[++i];
    } else {
      std::cerr << "usage: " << argv[0] << " [--only <id|group>]\n";
      return 2;
    }
  }
  bool all = true;
  try {
    pulseloss::run_validation(opts, [&](const pulseloss::CheckResult& r) {
      all = all && r.passed;
      std::cout << pulseloss::format_line(r) << std::endl;
    });
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return all ? 0 : 1;
}
