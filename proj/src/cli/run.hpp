#pragma once

namespace weyl::cli {

/// Entry point of weyl_lab. Exit codes: 0 ok, 2 config/precondition error
/// (nothing written), 3 resource cap, 1 numeric failure.
int run(int argc, char** argv);

}  // namespace weyl::cli
