#pragma once

#include <stdexcept>
#include <string>

namespace kent {

// Every domain failure derives from Error and carries a stable name()
// that the CLI prints verbatim before exiting with code 1.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define KENT_DEFINE_ERROR(NAME)                         \
  class NAME : public Error {                           \
   public:                                              \
    explicit NAME(const std::string& what)              \
        : Error(#NAME, what) {}                         \
  }

KENT_DEFINE_ERROR(DimensionError);
KENT_DEFINE_ERROR(InvalidSubsystem);
KENT_DEFINE_ERROR(InvalidPermutation);
KENT_DEFINE_ERROR(NotHermitian);
KENT_DEFINE_ERROR(NotPositive);
KENT_DEFINE_ERROR(InvalidK);
KENT_DEFINE_ERROR(NotAPartition);
KENT_DEFINE_ERROR(InvalidParameter);
KENT_DEFINE_ERROR(UnknownState);
KENT_DEFINE_ERROR(EmptyDatabase);
KENT_DEFINE_ERROR(FormatError);
KENT_DEFINE_ERROR(IntegrityError);
KENT_DEFINE_ERROR(VersionError);
KENT_DEFINE_ERROR(BracketError);

#undef KENT_DEFINE_ERROR

}  // namespace kent
