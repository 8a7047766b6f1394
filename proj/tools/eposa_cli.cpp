#include "eposa/cli.hpp"

int main(int argc, char** argv) { return eposa::cli_main(argc, argv); }
