#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfmod/ast.hpp"

namespace mfmod {

// One differential-test input vector: the literal texts consumed in order
// by ACCEPT (source side) and read (IR side).
struct TestCase {
    std::size_t id = 0;
    std::vector<std::string> inputs;
};

// Deterministic for a given (program, count, seed). Inputs cover boundary
// values of each receiving field before seeded random values, and every
// generated literal conforms to the receiving item's picture.
std::vector<TestCase> generate_tests(const Program& program, std::size_t count,
                                     std::uint64_t seed);

} // namespace mfmod
