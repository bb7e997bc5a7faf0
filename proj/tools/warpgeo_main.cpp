#include <iostream>
int main() { std::cout << "warpgeo\n"; }
