#include "devmean/cli.hpp"

int main(int argc, char** argv) { return devmean::cli::main_entry(argc, argv); }
