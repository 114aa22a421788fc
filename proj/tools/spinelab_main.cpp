#include <cstdio>
int main() { std::puts("spinelab: stub"); return 0; }
