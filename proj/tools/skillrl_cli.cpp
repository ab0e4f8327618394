#include <cstdio>

int main() {
  std::puts("skillrl: placeholder");
  return 0;
}
