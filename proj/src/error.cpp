#include "rgs/error.hpp"

namespace rgs {

void fail_validation(const std::string& what) { throw ValidationError(what); }
void fail_precondition(const std::string& what) { throw PreconditionError(what); }

}  // namespace rgs
