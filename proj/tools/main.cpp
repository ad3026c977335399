#include "mvcomp/cli.hpp"

int main(int argc, char** argv) {
  return mvcomp::run(std::vector<std::string>(argv, argv + argc));
}
