#include "xsblab/runner.hpp"

int main(int argc, char** argv) { return xsblab::cli_main(argc, argv); }
