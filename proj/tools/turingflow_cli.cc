#include <iostream>

#include "turingflow/cli.h"

int main(int argc, char** argv) {
  return turingflow::run_cli(argc, argv, std::cout, std::cerr);
}
