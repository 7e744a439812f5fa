#include "fbq/cli.hpp"

int main(int argc, char** argv) { return fbq::cli_main(argc, argv); }
