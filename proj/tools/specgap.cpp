#include "specgap/cli.hpp"

int main(int argc, char** argv) { return specgap::cli::main_entry(argc, argv); }
