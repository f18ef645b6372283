#include <iostream>

int main() {
  std::cout << "satrank: subcommands not wired yet\n";
  return 0;
}
