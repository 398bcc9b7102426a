#include "tda/cli.hpp"

int main(int argc, char** argv) { return tda::cli::main(argc, argv); }
