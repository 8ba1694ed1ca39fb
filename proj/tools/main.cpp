#include "freefft/cli.hpp"

int main(int argc, char** argv)
{
    return freefft::cli::main(argc, argv);
}
