#pragma once

#include <iosfwd>

namespace pm {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pm
