#include "minfib/runner.hpp"

int main(int argc, char** argv) { return minfib::cli_main(argc, argv); }
