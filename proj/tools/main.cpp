#include <telres/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return telres::run_cli(argc, argv, std::cout, std::cerr);
}
