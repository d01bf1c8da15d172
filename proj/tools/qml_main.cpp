#include <iostream>

#include "qml/cli.hpp"

int main(int argc, char** argv) { return qml::run(argc, argv, std::cout, std::cerr); }
