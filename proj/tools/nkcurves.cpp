#include "nkc/cli.hpp"

int main(int argc, char** argv) { return nkc::run_cli(argc, argv); }
