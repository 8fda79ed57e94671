#include "cli.hpp"

int main(int argc, char** argv) { return fracres::cli::main_entry(argc, argv); }
