#include "cachemodel/cli.hpp"

int main(int argc, char** argv) { return cachemodel::run_cli(argc, argv); }
