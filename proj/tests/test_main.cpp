#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <mpmat/errors.hpp>

int main(int argc, char** argv)
{
    mpmat::ensure_round_to_nearest();
    doctest::Context context(argc, argv);
    return context.run();
}
