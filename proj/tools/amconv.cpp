#include "cli/commands.hpp"

int main(int argc, char** argv) { return amconv::cli::run(argc, argv); }
