#pragma once

namespace zonorun {

// Exit codes: 0 ok, 1 verification failure, 2 usage error.
int cli_dispatch(int argc, char** argv);

}  // namespace zonorun
