#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wtf/acceptance.hpp"

// One PASS/FAIL line per criterion; criterion numbers on the command line
// restrict the run.
int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  wtf::run_acceptance(ids, [&](const wtf::CriterionResult& r) {
    std::printf("%s\n", wtf::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  });
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
