#include "xrel/cli.hpp"

int main(int argc, char** argv)
{
    return xrel::run(argc, argv);
}
