#include "tailfit/cli.hpp"

int main(int argc, char** argv) { return tailfit::run_cli(argc, argv); }
