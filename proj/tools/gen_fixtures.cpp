// Writes the generated test fixtures into the directory given as argv[1].

#include <cstdio>
#include <fstream>
#include <iostream>

#include "support.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures <dir>\n";
    return 2;
  }
  const std::string dir = argv[1];
  std::ofstream os(dir + "/circle60.csv");
  os << "x,y\n";
  const auto pc = tda::testing::circle_sample(60, tda::testing::kCircleRadius, tda::testing::kCircleSeed);
  char buf[64];
  for (const auto& p : pc.points()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p[0], p[1]);
    os << buf;
  }
  return os ? 0 : 1;
}
