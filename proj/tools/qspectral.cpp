#include "qspectral/cli.hpp"

int main(int argc, char** argv) { return qspectral::cli::main(argc, argv); }
