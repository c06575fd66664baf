// Regenerates the machine files under fixtures/ from the builders.
//   make_fixtures DIR

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "transducers/fixtures.hpp"
#include "transducers/io.hpp"

int main(int argc, char** argv) {
  using namespace transducers;
  if (argc != 2) {
    std::cerr << "usage: make_fixtures DIR\n";
    return 1;
  }
  const std::string dir = argv[1];
  const std::vector<std::pair<std::string, Machine>> files = {
      {"fig1.json", fixtures::fig1()},
      {"fig2left.json", fixtures::fig2left()},
      {"fig2right.json", fixtures::fig2right()},
      {"fig3.json", fixtures::fig3()},
      {"fig4.json", fixtures::fig4()},
      {"fig5.json", fixtures::fig5()},
      {"fig2right-renamed.json", fixtures::fig2right_renamed()},
      {"fig2right-ones.json", fixtures::fig2right_ones()},
      {"fig2right-mutant.json", fixtures::fig2right_mutant()},
  };
  for (const auto& [name, m] : files) {
    save_machine(dir + "/" + name, m);
    std::cout << dir << "/" << name << "\n";
  }
  return 0;
}
