#include "corefree/cli.hpp"

int main(int argc, char** argv) { return corefree::cli::run(argc, argv); }
