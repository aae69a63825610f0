#include <iostream>

int main() {
  std::cout << "ctd placeholder\n";
  return 0;
}
