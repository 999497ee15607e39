#pragma once

#include <stdexcept>
#include <string>

namespace heaps {

/// Base for every data or precondition failure raised by the library.
/// The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class SynthError : public Error {
 public:
  using Error::Error;
};

class PlotError : public Error {
 public:
  using Error::Error;
};

}  // namespace heaps
