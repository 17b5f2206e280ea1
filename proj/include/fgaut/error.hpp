#pragma once

#include <stdexcept>
#include <string>

namespace fgaut {

// Base of every error raised by the library. Callers that only care about
// "the input was rejected" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FGAUT_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

FGAUT_DEFINE_ERROR(SyntaxError);
FGAUT_DEFINE_ERROR(RankError);
FGAUT_DEFINE_ERROR(LengthError);
FGAUT_DEFINE_ERROR(NotInverse);
FGAUT_DEFINE_ERROR(BudgetError);
FGAUT_DEFINE_ERROR(NotInvolution);
FGAUT_DEFINE_ERROR(NotSoftInvolution);
FGAUT_DEFINE_ERROR(ParityError);
FGAUT_DEFINE_ERROR(NotInverted);
FGAUT_DEFINE_ERROR(NotPrimitive);
FGAUT_DEFINE_ERROR(NotApplicable);
FGAUT_DEFINE_ERROR(SampleInconclusive);
FGAUT_DEFINE_ERROR(PreconditionError);
FGAUT_DEFINE_ERROR(UnknownSuite);

#undef FGAUT_DEFINE_ERROR

/// Three-valued answer for questions the library can only partially decide.
enum class Verdict { no, yes, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace fgaut
