#include <cstdio>
int main() { std::puts("ldmc placeholder"); return 0; }
