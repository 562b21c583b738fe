#ifndef GUARD_CHEV_VERIFY_H
#define GUARD_CHEV_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

namespace chev
{

struct Check
{
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult
{
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  bool ok() const;
  std::size_t failures() const;
};

struct VerifyOptions
{
  int threads = 1;
  std::uint64_t seed = 1;
  std::string fixtures = CHEV_FIXTURE_DIR;
  int oracle_words = 10000; // per type and field
  int oracle_cells = 1000;  // G2(F2) words against the enumeration oracle
};

std::vector<std::string> const &suite_names();

// ParseError for an unknown suite.
SuiteResult run_suite(std::string const &name, VerifyOptions const &opt);

std::string format_check(Check const &c);

} // namespace chev

#endif // GUARD_CHEV_VERIFY_H
