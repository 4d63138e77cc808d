#include "cli.hpp"

int main(int argc, char** argv) { return qeuler::cli::run(argc, argv); }
