#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "pseudospline/errors.hpp"

namespace pspline {

/// File-system failure; maps to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitTolerance = 4;

/// Exit code for a library error: 1 io/parse, 2 config/domain,
/// 3 verification/consistency, 4 numerical tolerance.
int exit_code(pseudospline::ErrorKind kind);

struct Context {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
};

int cmd_filter(const Context& ctx);
int cmd_cascade(const Context& ctx);
int cmd_framelets(const Context& ctx);
int cmd_transform(const Context& ctx);
int cmd_verify(const Context& ctx);
int cmd_analyze(const Context& ctx);
int cmd_sweep(const Context& ctx);

int dispatch(const Context& ctx);

}  // namespace pspline
