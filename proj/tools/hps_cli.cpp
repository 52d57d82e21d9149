#include <hps/cli.hpp>

int main(int argc, char** argv) { return hps::cli::run(argc, argv); }
