#ifndef GUARD_CHEV_ERRORS_H
#define GUARD_CHEV_ERRORS_H

#include <stdexcept>
#include <string>

namespace chev
{

class Error : public std::runtime_error
{
public:
  Error(std::string kind, std::string const &what)
  : std::runtime_error(kind + ": " + what), _kind(std::move(kind))
  {}

  std::string const &kind() const
  { return _kind; }

private:
  std::string _kind;
};

#define CHEV_ERROR(NAME) \
  struct NAME : Error \
  { \
    explicit NAME(std::string const &what) : Error(#NAME, what) {} \
  }

CHEV_ERROR(UnsupportedType);
CHEV_ERROR(DimensionMismatch);
CHEV_ERROR(NotARoot);
CHEV_ERROR(ZeroScalar);
CHEV_ERROR(NotGeneric);
CHEV_ERROR(W1DoesNotDominate);
CHEV_ERROR(InvalidWitness);
CHEV_ERROR(Inconsistent);
CHEV_ERROR(UnknownSubsystem);
CHEV_ERROR(PlanTooLarge);
CHEV_ERROR(Red2Unavailable);
CHEV_ERROR(OracleTooLarge);
CHEV_ERROR(UnsupportedGeometry);
CHEV_ERROR(ParseError);
CHEV_ERROR(InternalError);

#undef CHEV_ERROR

} // namespace chev

#endif // GUARD_CHEV_ERRORS_H
