#include <regsets/cli.hpp>

int main(int argc, char** argv) { return regsets::cli::run_main(argc, argv); }
