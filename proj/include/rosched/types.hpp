// Copyright 2026 The rosched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROSCHED__TYPES_HPP_
#define ROSCHED__TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rosched
{

/// Simulation time in integer ticks. One tick is 100 us unless a taskset says otherwise.
using Tick = std::uint64_t;

using JobIndex = std::uint64_t;
using NodeId = std::size_t;

/// Base class of every error raised by this library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A dependency cycle in the publish/subscribe graph.
class CycleError : public Error
{
public:
  CycleError(std::vector<std::string> cycle, const std::string & what)
  : Error(what), cycle_(std::move(cycle)) {}

  const std::vector<std::string> & cycle() const {return cycle_;}

private:
  std::vector<std::string> cycle_;
};

/// A field that violates the taskset schema or a callback invariant.
class SchemaError : public Error
{
public:
  SchemaError(std::string field, const std::string & what)
  : Error(what), field_(std::move(field)) {}

  const std::string & field() const {return field_;}

private:
  std::string field_;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error
{
public:
  ParseError(std::size_t line, std::size_t column, const std::string & what)
  : Error(what), line_(line), column_(column) {}

  std::size_t line() const {return line_;}
  std::size_t column() const {return column_;}

private:
  std::size_t line_;
  std::size_t column_;
};

class MissingAssignment : public Error
{
public:
  using Error::Error;
};

class HorizonTooSmall : public Error
{
public:
  using Error::Error;
};

class SporadicTask : public Error
{
public:
  using Error::Error;
};

class NotPeriodic : public Error
{
public:
  using Error::Error;
};

class MissingBound : public Error
{
public:
  using Error::Error;
};

class IncomparableTraces : public Error
{
public:
  using Error::Error;
};

}  // namespace rosched

#endif  // ROSCHED__TYPES_HPP_
