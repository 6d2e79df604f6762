#include "chiral_berry/cli/commands.hpp"

int main(int argc, char** argv) { return chiral_berry::cli::run(argc, argv); }
