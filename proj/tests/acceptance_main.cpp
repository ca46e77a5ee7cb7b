#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "twistvol/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto results = twistvol::run_acceptance(only);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", r.line().c_str());
    failed += !r.pass;
  }
  std::printf("%zu/%zu criteria pass\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
