// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "homega/suite.hpp"

int main() {
  bool all = true;
  for (int id = 1; id <= 9; ++id) {
    const auto r = homega::suite::run_criterion(id);
    std::puts(homega::suite::format_line(r).c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
