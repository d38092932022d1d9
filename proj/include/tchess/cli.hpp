// Command-line front end: compile, window, solve, verify, value-family and
// diagram rendering. All file I/O lives here; every command is a pure
// function of its inputs. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.
#pragma once

namespace tchess {

int cli_run(int argc, const char* const* argv);

}  // namespace tchess
