#include <nlcx/cli.hpp>

int main(int argc, char** argv) { return nlcx::run(argc, argv); }
