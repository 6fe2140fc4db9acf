#pragma once

#include <stdexcept>
#include <string>

namespace relief {

// Error taxonomy shared by the library and the CLI exit-code mapping:
//   ConfigError / SpecError  -> caller supplied bad options or parameters
//   ParseError / DataError   -> the data itself violates a contract
//   UnsupportedError         -> valid data, but the algorithm does not apply
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace relief
