#include "slopes/cli.hpp"

int main(int argc, char** argv) { return slopes::cli::main(argc, argv); }
