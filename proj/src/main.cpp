#include "tchess/cli.hpp"

int main(int argc, char** argv) { return tchess::cli_run(argc, argv); }
