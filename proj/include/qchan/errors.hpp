#pragma once

#include <stdexcept>
#include <string>

namespace qchan {

// Scenario / detector configuration rejected during validation.  Messages
// name the offending field.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qchan
