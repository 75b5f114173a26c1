#include <iostream>

#include "gupheun/cli.hpp"

int main(int argc, char** argv) {
  gupheun::cli::RunConfig cfg;
  if (auto code = gupheun::cli::parse_args(argc, argv, cfg, std::cout, std::cerr)) return *code;
  return gupheun::cli::run(cfg, std::cout, std::cerr);
}
