// Prints one PASS/FAIL line per acceptance criterion. `--only N` restricts
// the run to criterion N; the exit code is 0 iff every selected one passes.
#include "nemcone/verify.hpp"

#include <cstring>
#include <iostream>

using namespace nemcone;

int main(int argc, char** argv) {
  std::vector<std::string> filter;
  bool verbose = false;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--only") == 0 && k + 1 < argc)
      filter.push_back(argv[++k]);
    else if (std::strcmp(argv[k], "--verbose") == 0)
      verbose = true;
    else {
      std::cerr << "usage: acceptance [--only N]... [--verbose]\n";
      return 2;
    }
  }
  auto results = run_criteria(select_criteria(filter), load_fixtures());
  std::cout << format_report(results, verbose);
  for (const auto& r : results)
    if (!r.passed()) return 1;
  return 0;
}
